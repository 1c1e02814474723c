#include "tgm/baselines.hpp"

#include <cmath>

#include "tgm/errors.hpp"

namespace tgm {

FdmModeState fdm_rest_state(double t0) {
  FdmModeState s;
  s.time = t0;
  return s;
}

FdmModeState fdm_euler_diffusion_step(const FdmModeState& state, double k, double c,
                                      Complex source_amp, double dt) {
  if (!(dt > 0.0)) throw NumericalInputError("fdm step width must be positive");
  FdmModeState next = state;
  next.previous = state.current;
  next.current = (1.0 - c * k * k * dt) * state.current + dt * source_amp;
  next.time = state.time + dt;
  next.last_dt = dt;
  return next;
}

FdmModeState fdm_leapfrog_wave_step(const FdmModeState& state, double k, double c,
                                    Complex source_amp, double dt) {
  if (!(dt > 0.0)) throw NumericalInputError("fdm step width must be positive");
  const Complex accel = c * c * (source_amp - k * k * state.current);
  FdmModeState next = state;
  next.previous = state.current;
  if (state.levels < 2) {
    next.current = state.current + dt * state.rate + 0.5 * dt * dt * accel;
    next.levels = 2;
  } else {
    const double h0 = state.last_dt;
    next.current = state.current + (dt / h0) * (state.current - state.previous) +
                   0.5 * dt * (dt + h0) * accel;
  }
  next.time = state.time + dt;
  next.last_dt = dt;
  return next;
}

CflThreshold cfl_threshold(EquationKind kind, const SpectralGrid& grid, double c) {
  if (!(c > 0.0)) throw InvalidArgument("cfl_threshold needs a positive coefficient");
  const double k_max = grid.k_max();
  CflThreshold out;
  if (kind == EquationKind::diffusion) {
    out.mode_space = 2.0 / (c * k_max * k_max);
    out.grid_form = 2.0 * grid.dx() * grid.dx() / c;
  } else {
    out.mode_space = 2.0 / (c * k_max);
  }
  return out;
}

}  // namespace tgm
