#pragma once

// Reference integrator for the per-mode ODEs. It shares no code with the
// transient-Green or finite-difference paths and serves as their oracle.

#include <functional>
#include <span>
#include <vector>

#include "tgm/spectral.hpp"

namespace tgm::verify {

using Forcing = std::function<Complex(double)>;

/// Integrates sum_n a_n y^(n) + kappa y = f(t) from t0 to t1 with step-doubling
/// RK4 (plus local Richardson extrapolation). `state` is (y, y', ..., y^(p-1)).
/// The forcing must be smooth on [t0, t1]; split the interval at discontinuities.
std::vector<Complex> integrate_mode(std::span<const double> time_coeffs, Complex kappa,
                                    const Forcing& forcing, std::vector<Complex> state, double t0,
                                    double t1, double rel_tol = 1e-12);

/// Response at t_eval >= pulse_end to a unit pulse on (pulse_start, pulse_end), from rest.
Complex boxcar_response(std::span<const double> time_coeffs, Complex kappa, double pulse_start,
                        double pulse_end, double t_eval);

/// y(t) from rest at t = 0 under the forcing amplitude * sin(omega0 t).
Complex driven_response(std::span<const double> time_coeffs, Complex kappa, Complex amplitude,
                        double omega0, double t);

}  // namespace tgm::verify
