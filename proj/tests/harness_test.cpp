#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include <fmt/format.h>
#include <unistd.h>

#include "doctest.h"
#include "tgm/baselines.hpp"
#include "tgm/errors.hpp"
#include "tgm/harness.hpp"

using namespace tgm;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const char* name) {
  auto dir = fs::temp_directory_path() / fmt::format("tgm_test_{}_{}", name, ::getpid());
  fs::create_directories(dir);
  return dir;
}

double relative_l2(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("preset then overrides") {
    const auto cfg = parse_config(
        "# wave run\n"
        "equation = wave\n"
        "dt = 0.02   # coarser\n"
        "\n"
        "snapshots = 0.5, 1.0\n"
        "scheme = fdm\n");
    CHECK(cfg.equation == EquationKind::wave);
    CHECK(cfg.scheme == Scheme::fdm);
    CHECK(cfg.dt == 0.02);
    CHECK(cfg.c == 1.0);
    CHECK(cfg.omega0 == std::numbers::pi);
    CHECK(cfg.snapshot_times == std::vector<double>{0.5, 1.0});
  }
  SUBCASE("diffusion preset") {
    const auto cfg = parse_config("equation = diffusion\n");
    CHECK(cfg.c == 3.0);
    CHECK(cfg.dt == 0.001);
    CHECK(cfg.t_end == 0.1);
    CHECK(cfg.omega0 == 20.0);
    CHECK(cfg.n_points == 64);
    CHECK(cfg.length == 10.0);
    CHECK(cfg.sigma == 0.5);
    CHECK(cfg.output_times() == std::vector<double>{0.1});
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_config("equation = wave\nwave_speed = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("equation = wave\ndt = 0.1\ndt = 0.2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("dt = 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("equation = heat\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("equation = wave\ndt = fast\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("equation = wave\nn_points = 63\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("equation = wave\nsnapshots = 2.0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("equation = wave\njust text\n"), ConfigError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_config("/nonexistent/tgm.cfg"), IoError);
  }
}

TEST_CASE("step schedule") {
  SUBCASE("uniform") {
    const auto w = step_schedule(1.0, 0.01, {});
    CHECK(w.size() == 100);
    double t = 0.0;
    for (double h : w) {
      CHECK(h == doctest::Approx(0.01).epsilon(1e-9));
      t += h;
    }
    CHECK(t == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("shortened final step") {
    const auto w = step_schedule(0.25, 0.1, {});
    REQUIRE(w.size() == 3);
    CHECK(w[2] == doctest::Approx(0.05));
  }
  SUBCASE("lands on every stop") {
    const double stops[] = {0.15, 0.3};
    const auto w = step_schedule(0.5, 0.1, stops);
    REQUIRE(w.size() == 6);
    CHECK(w[0] + w[1] == doctest::Approx(0.15));
    CHECK(w[1] == doctest::Approx(0.05));
  }
}

TEST_CASE("error norm") {
  const auto g = make_grid(4, 1.0);
  SpectralField a(g), b(g);
  a[1] = Complex(3.0, 4.0);
  CHECK(error_norm(a, b) == 5.0);
  ExactSpectrum e{b, {0, 1, 0, 0}};
  const auto masked = error_norm(a, e);
  CHECK(masked.value == 0.0);
  CHECK(masked.excluded_modes == 1);
  CHECK_THROWS_AS(error_norm(a, SpectralField(make_grid(6, 1.0))), InvalidArgument);
}

TEST_CASE("order fit") {
  std::vector<ErrorRecord> quad, lin;
  for (double dt : {0.1, 0.05, 0.025, 0.0125}) {
    quad.push_back(make_error_record(dt, 1.0, 3.0 * dt * dt));
    lin.push_back(make_error_record(dt, 1.0, 0.7 * dt));
  }
  CHECK(fit_order(quad) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit_order(lin) == doctest::Approx(1.0).epsilon(1e-12));

  quad.push_back(make_error_record(0.2, 1.0, std::numeric_limits<double>::infinity()));
  CHECK(quad.back().diverged);
  CHECK(fit_order(quad) == doctest::Approx(2.0).epsilon(1e-12));

  const std::vector<ErrorRecord> two(quad.begin(), quad.begin() + 2);
  CHECK_THROWS_AS(fit_order(two), InsufficientData);
  CHECK(make_error_record(0.1, 1.0, 2e6).diverged);
  CHECK_FALSE(make_error_record(0.1, 1.0, 1e6).diverged);
}

TEST_CASE("default experiments reproduce the exact snapshot") {
  for (auto cfg : {ExperimentConfig::default_wave(), ExperimentConfig::default_diffusion()}) {
    const auto r = run_experiment(cfg);
    REQUIRE(r.snapshots.size() == 1);
    CHECK(r.steps == 100);
    CHECK_FALSE(r.diverged);
    const auto& s = r.snapshots[0];
    CHECK(s.t == cfg.t_end);
    CHECK(s.exact.excluded_count() == 0);
    CHECK(s.imag_residue < 1e-10);
    CHECK(relative_l2(s.u_real, s.u_exact) < 1e-2);
    CHECK(s.er < 1e-4);
  }
}

TEST_CASE("zero source leaves the field at rest") {
  auto cfg = ExperimentConfig::default_wave();
  cfg.amplitude = 0.0;
  for (auto scheme : {Scheme::tgm, Scheme::fdm}) {
    cfg.scheme = scheme;
    const auto r = run_experiment(cfg);
    CHECK(r.snapshots[0].er == 0.0);
    for (double v : r.snapshots[0].u_real) CHECK(v == 0.0);
  }
}

TEST_CASE("sweeps") {
  SUBCASE("empty list") {
    CHECK(dt_sweep(ExperimentConfig::default_wave(), {}).empty());
  }
  SUBCASE("TGM stays finite from tiny to huge steps") {
    auto cfg = ExperimentConfig::default_diffusion();
    cfg.t_end = 10.0;
    const double dts[] = {1e-3, 1e-2, 0.1, 1.0, 10.0};
    for (const auto& row : dt_sweep(cfg, dts)) {
      CHECK_FALSE(row.tgm.diverged);
      CHECK(std::isfinite(row.tgm.er));
    }
    auto small = ExperimentConfig::default_diffusion();
    const double tiny[] = {1e-4};
    CHECK(std::isfinite(dt_sweep(small, tiny).front().tgm.er));
  }
  SUBCASE("diffusion FDM at dt = 0.017 blows up over a long run") {
    auto cfg = ExperimentConfig::default_diffusion();
    cfg.t_end = 1000 * 0.017;
    const double dts[] = {0.017};
    const auto rows = dt_sweep(cfg, dts);
    CHECK(rows[0].fdm.diverged);
    CHECK_FALSE(rows[0].tgm.diverged);
  }
  SUBCASE("wave FDM above the threshold") {
    auto cfg = ExperimentConfig::default_wave();
    cfg.t_end = 40.0;
    const double dts[] = {0.2, 0.05};
    const auto rows = dt_sweep(cfg, dts);
    CHECK(rows[0].fdm.diverged);
    CHECK_FALSE(rows[1].fdm.diverged);
    CHECK_FALSE(rows[0].tgm.diverged);
  }
  SUBCASE("non-positive step") {
    const double dts[] = {0.01, -1.0};
    CHECK_THROWS_AS(dt_sweep(ExperimentConfig::default_wave(), dts), InvalidArgument);
  }
  SUBCASE("diverged FDM run keeps NaN samples") {
    auto cfg = ExperimentConfig::default_diffusion();
    cfg.scheme = Scheme::fdm;
    cfg.dt = 0.017;
    cfg.t_end = 17.0;
    const auto r = run_experiment(cfg);
    CHECK(r.diverged);
    CHECK(r.steps < 1000);
    CHECK(std::isnan(r.snapshots[0].u_real[0]));
  }
}

TEST_CASE("CSV export") {
  const auto dir = scratch_dir("csv");
  auto cfg = ExperimentConfig::default_wave();
  cfg.snapshot_times = {0.5, 1.0};
  const auto r = run_experiment(cfg);

  export_snapshots_csv(dir / "snapshots.csv", r);
  const auto snaps = read_csv(dir / "snapshots.csv");
  CHECK(snaps.header == std::vector<std::string>{"t", "x", "u_real", "u_exact"});
  CHECK(snaps.rows.size() == 128);
  // 17 significant digits round-trip exactly.
  CHECK(std::stod(snaps.rows[70][2]) == r.snapshots[1].u_real[6]);
  CHECK(std::stod(snaps.rows[3][1]) == r.grid->x(3));

  export_spectra_csv(dir / "spectra.csv", r);
  const auto spec = read_csv(dir / "spectra.csv");
  CHECK(spec.header == std::vector<std::string>{"t", "k", "re", "im"});
  CHECK(spec.rows.size() == 128);
  CHECK(std::stod(spec.rows[1][3]) == r.snapshots[0].numeric[1].imag());

  auto dcfg = ExperimentConfig::default_diffusion();
  const double dts[] = {0.016, 0.008, 0.004, 0.002, 0.001};
  const auto rows = dt_sweep(dcfg, dts);
  export_sweep_csv(dir / "sweep.csv", rows);
  const auto sweep = read_csv(dir / "sweep.csv");
  CHECK(sweep.header == std::vector<std::string>{"dt", "er_tgm", "er_fdm", "diverged"});
  REQUIRE(sweep.rows.size() == 5);
  CHECK(std::stod(sweep.rows[4][1]) == rows[4].tgm.er);
  CHECK(sweep.rows[4][3] == "none");

  export_sweep_csv(dir / "empty.csv", {});
  const auto empty = read_csv(dir / "empty.csv");
  CHECK(empty.header.size() == 4);
  CHECK(empty.rows.empty());

  CHECK_THROWS_AS(export_sweep_csv(dir / "missing" / "x.csv", rows), IoError);
  fs::remove_all(dir);
}
