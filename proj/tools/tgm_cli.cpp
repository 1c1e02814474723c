// Command-line front end: run, sweep, compare, selftest.
//
// Exit codes: 0 success, 1 configuration/usage error, 2 I/O error, 3 selftest failure.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "tgm/baselines.hpp"
#include "tgm/errors.hpp"
#include "tgm/harness.hpp"
#include "tgm/verify/acceptance.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kIoError = 2, kSelftestFailure = 3 };

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw tgm::IoError(fmt::format("cannot create output directory '{}': {}", dir, ec.message()));
  return fs::path(dir);
}

int cmd_run(const std::string& config_path, const std::optional<std::string>& out) {
  const auto cfg = tgm::load_config(config_path);
  const auto result = tgm::run_experiment(cfg);
  const auto dir = prepare_dir(out.value_or(cfg.output_dir));
  tgm::export_snapshots_csv(dir / "snapshots.csv", result);
  tgm::export_spectra_csv(dir / "spectra.csv", result);

  fmt::print("{} / {}: {} steps of dt={}{}\n", tgm::to_string(cfg.equation), tgm::to_string(cfg.scheme),
             result.steps, cfg.dt, result.diverged ? " (diverged)" : "");
  for (const auto& snap : result.snapshots)
    fmt::print("  t={:<10g} Er={:.6e}  excluded={}  imag_residue={:.2e}\n", snap.t, snap.er,
               snap.exact.excluded_count(), snap.imag_residue);
  fmt::print("wrote {} and {}\n", (dir / "snapshots.csv").string(), (dir / "spectra.csv").string());
  return kOk;
}

int cmd_sweep(const std::string& config_path, std::vector<double> dts, const std::optional<std::string>& out) {
  const auto cfg = tgm::load_config(config_path);
  if (dts.empty()) dts = tgm::default_sweep(cfg.equation);
  const auto rows = tgm::dt_sweep(cfg, dts);
  const auto dir = prepare_dir(out.value_or(cfg.output_dir));
  tgm::export_sweep_csv(dir / "sweep.csv", rows);

  const auto cfl = tgm::cfl_threshold(cfg.equation, *tgm::make_grid(cfg.n_points, cfg.length), cfg.c);
  fmt::print("{} sweep to t={} (mode-space CFL dt={:.4e}", tgm::to_string(cfg.equation), cfg.t_end,
             cfl.mode_space);
  if (cfl.grid_form) fmt::print(", 2dx^2/c={:.4e}", *cfl.grid_form);
  fmt::print(")\n{:>12} {:>14} {:>14}\n", "dt", "Er(TGM)", "Er(FDM)");
  for (const auto& r : rows)
    fmt::print("{:>12g} {:>14.6e} {:>14.6e}{}\n", r.dt, r.tgm.er, r.fdm.er,
               r.fdm.diverged ? "  FDM diverged" : "");
  for (auto scheme : {tgm::Scheme::tgm, tgm::Scheme::fdm}) {
    try {
      fmt::print("order({}) = {:.3f}\n", tgm::to_string(scheme),
                 tgm::fit_order(tgm::scheme_records(rows, scheme)));
    } catch (const tgm::InsufficientData& e) {
      fmt::print("order({}) unavailable: {}\n", tgm::to_string(scheme), e.what());
    }
  }
  fmt::print("wrote {}\n", (dir / "sweep.csv").string());
  return kOk;
}

int cmd_compare(const std::string& config_path) {
  auto cfg = tgm::load_config(config_path);
  cfg.scheme = tgm::Scheme::tgm;
  const auto tgm_run = tgm::run_experiment(cfg);
  cfg.scheme = tgm::Scheme::fdm;
  const auto fdm_run = tgm::run_experiment(cfg);

  for (std::size_t i = 0; i < tgm_run.snapshots.size(); ++i) {
    const auto& a = tgm_run.snapshots[i];
    const auto& b = fdm_run.snapshots[i];
    fmt::print("t={}  Er(TGM)={:.6e}  Er(FDM)={:.6e}{}\n", a.t, a.er, b.er,
               fdm_run.diverged ? "  (FDM diverged)" : "");
    fmt::print("{:>10} {:>14} {:>14} {:>14}\n", "x", "u_tgm", "u_fdm", "u_exact");
    for (std::size_t j = 0; j < a.u_real.size(); ++j)
      fmt::print("{:>10.5f} {:>14.6e} {:>14.6e} {:>14.6e}\n", tgm_run.grid->x(j), a.u_real[j],
                 b.u_real[j], a.u_exact[j]);
  }
  return kOk;
}

int cmd_selftest() {
  int failures = 0;
  for (const auto& r : tgm::verify::run_acceptance()) {
    fmt::print("{}\n", tgm::verify::format_result(r));
    if (!r.passed) ++failures;
  }
  fmt::print("{} criteria failed\n", failures);
  return failures == 0 ? kOk : kSelftestFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transient Green's-function spectral solver"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  std::vector<double> dts;

  auto* run = app.add_subcommand("run", "Run one experiment and export snapshots");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--out", out_dir, "Output directory (default: out_dir from the config)");

  auto* sweep = app.add_subcommand("sweep", "Error against the exact solution for a list of step widths");
  sweep->add_option("--config", config_path, "Config file")->required();
  sweep->add_option("--dts", dts, "Comma-separated step widths (default: built-in sweep)")->delimiter(',');
  sweep->add_option("--out", out_dir, "Output directory (default: out_dir from the config)");

  auto* compare = app.add_subcommand("compare", "TGM, FDM and exact solution side by side");
  compare->add_option("--config", config_path, "Config file")->required();

  auto* selftest = app.add_subcommand("selftest", "Run the oracle and property acceptance checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir);
    if (sweep->parsed()) return cmd_sweep(config_path, dts, out_dir);
    if (compare->parsed()) return cmd_compare(config_path);
    if (selftest->parsed()) return cmd_selftest();
  } catch (const tgm::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const tgm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}
