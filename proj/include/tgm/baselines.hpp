#pragma once

#include <optional>

#include "tgm/equations.hpp"
#include "tgm/spectral.hpp"

namespace tgm {

/// Explicit finite-difference state for one Fourier mode.
struct FdmModeState {
  Complex current;
  /// Previous level; only the wave leapfrog reads it.
  Complex previous;
  /// Initial time derivative, consumed by the wave scheme's Taylor start.
  Complex rate;
  double time = 0.0;
  double last_dt = 0.0;
  /// Number of solution levels available (1 until the first wave step).
  int levels = 1;
};

FdmModeState fdm_rest_state(double t0 = 0.0);

/// Forward Euler on u' + ck^2 u = S: u <- (1 - ck^2 dt) u + dt S(t_n).
FdmModeState fdm_euler_diffusion_step(const FdmModeState& state, double k, double c,
                                      Complex source_amp, double dt);

/// Three-level central scheme on (1/c^2) u'' + k^2 u = S, with S sampled at t_n.
/// The first call uses the Taylor start u1 = u0 + dt u0' + dt^2/2 c^2 (S - k^2 u0).
/// Unequal consecutive widths use the non-uniform central difference.
FdmModeState fdm_leapfrog_wave_step(const FdmModeState& state, double k, double c,
                                    Complex source_amp, double dt);

struct CflThreshold {
  /// Largest stable dt of the per-mode recurrences over |k| <= pi/dx.
  double mode_space = 0.0;
  /// 2 dx^2 / c for diffusion; no counterpart for the wave equation.
  std::optional<double> grid_form;
};

CflThreshold cfl_threshold(EquationKind kind, const SpectralGrid& grid, double c);

}  // namespace tgm
