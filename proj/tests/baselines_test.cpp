#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tgm/baselines.hpp"
#include "tgm/equations.hpp"
#include "tgm/errors.hpp"

using namespace tgm;

TEST_CASE("forward Euler diffusion step") {
  SUBCASE("from rest with unit source") {
    const auto s = fdm_euler_diffusion_step(fdm_rest_state(), 2.0, 3.0, 1.0, 0.001);
    CHECK(s.current == Complex(0.001));
    CHECK(s.time == 0.001);
  }
  SUBCASE("decay factor") {
    FdmModeState s = fdm_rest_state();
    s.current = 1.0;
    s = fdm_euler_diffusion_step(s, 2.0, 3.0, 0.0, 0.01);
    CHECK(s.current.real() == doctest::Approx(1.0 - 0.12));
  }
  SUBCASE("first order against the exact mode") {
    const double k = 2.0 * std::numbers::pi * 63.0 / 640.0;
    const SourceModel src{5.0, 0.5, 20.0, 1.0};
    const Complex spec = gaussian_source_spectrum(src, k);
    FdmModeState s = fdm_rest_state();
    const double dt = 0.001;
    for (int n = 0; n < 100; ++n)
      s = fdm_euler_diffusion_step(s, k, 3.0, spec * source_time_amplitude(src, n * dt), dt);
    const Complex exact = exact_diffusion(k, {3.0}, src, 0.1);
    const double rel = std::abs(s.current - exact) / std::abs(exact);
    CHECK(rel < 10.0 * dt);
    CHECK(rel > 0.1 * dt);  // sampling at t_n is first order, not better
  }
  SUBCASE("amplification above the threshold") {
    const auto g = make_grid(64, 10.0);
    const double k = g->k_max(), c = 3.0;
    const double dt = 1.1 * cfl_threshold(EquationKind::diffusion, *g, c).mode_space;
    FdmModeState s = fdm_rest_state();
    s.current = 1e-3;
    for (int n = 0; n < 200; ++n) s = fdm_euler_diffusion_step(s, k, c, 0.0, dt);
    CHECK(std::abs(s.current) > 1e3);
  }
  SUBCASE("rejects non-positive steps") {
    CHECK_THROWS_AS(fdm_euler_diffusion_step(fdm_rest_state(), 1.0, 1.0, 1.0, 0.0), NumericalInputError);
  }
}

TEST_CASE("leapfrog wave step") {
  SUBCASE("Taylor start") {
    const auto s = fdm_leapfrog_wave_step(fdm_rest_state(), 1.0, 2.0, 1.0, 0.1);
    CHECK(s.current.real() == doctest::Approx(0.5 * 0.01 * 4.0));
    CHECK(s.levels == 2);
    CHECK(s.previous == Complex(0.0));
  }
  SUBCASE("constant forcing at k = 0 is exact even with uneven steps") {
    FdmModeState s = fdm_rest_state();
    double t = 0.0;
    for (double h : {0.1, 0.1, 0.05, 0.2, 0.03, 0.1}) {
      s = fdm_leapfrog_wave_step(s, 0.0, 1.5, 1.0, h);
      t += h;
      CHECK(s.current.real() == doctest::Approx(0.5 * 2.25 * t * t).epsilon(1e-13));
    }
  }
  SUBCASE("second order for a free oscillation") {
    auto run = [](int steps) {
      const double k = 2.0, T = 1.0, dt = T / steps;
      FdmModeState s = fdm_rest_state();
      s.current = 1.0;
      for (int n = 0; n < steps; ++n) s = fdm_leapfrog_wave_step(s, k, 1.0, 0.0, dt);
      return std::abs(s.current - std::cos(2.0 * T));
    };
    CHECK(run(100) / run(200) == doctest::Approx(4.0).epsilon(0.05));
  }
  SUBCASE("unstable above the threshold") {
    const auto g = make_grid(64, 10.0);
    const double dt = 1.2 * cfl_threshold(EquationKind::wave, *g, 1.0).mode_space;
    FdmModeState s = fdm_rest_state();
    s.current = 1e-3;
    for (int n = 0; n < 100; ++n) s = fdm_leapfrog_wave_step(s, g->k_max(), 1.0, 0.0, dt);
    CHECK(std::abs(s.current) > 1e3);
  }
}

TEST_CASE("CFL thresholds for the default grid") {
  const auto g = make_grid(64, 10.0);
  const auto d = cfl_threshold(EquationKind::diffusion, *g, 3.0);
  CHECK(d.mode_space == doctest::Approx(2.0 / (3.0 * g->k_max() * g->k_max())));
  CHECK(d.mode_space == doctest::Approx(1.702e-3).epsilon(1e-3));
  REQUIRE(d.grid_form.has_value());
  CHECK(*d.grid_form == doctest::Approx(0.016797).epsilon(1e-4));

  const auto w = cfl_threshold(EquationKind::wave, *g, 1.0);
  CHECK(w.mode_space == doctest::Approx(0.10105).epsilon(1e-4));
  CHECK_FALSE(w.grid_form.has_value());
  CHECK_THROWS_AS(cfl_threshold(EquationKind::wave, *g, 0.0), InvalidArgument);
}
