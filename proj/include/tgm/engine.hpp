#pragma once

// Generic transient-Green stepper for constant-coefficient operators.
//
// Each Fourier mode obeys  sum_n a_n u^(n)(t) + K u(t) = S(t).  With simple roots
// lambda_j of L(lambda) = sum_n a_n lambda^n + K, the state after step N holds one
// coefficient F_j per root and the solution for t >= t_N is
//
//     u(t) = sum_j F_j exp(lambda_j (t - t_N)).
//
// A step of width dt propagates each F_j exactly and injects the response to a
// boxcar source of height s over (t_N, t_N + dt):
//
//     F_j <- F_j exp(lambda_j dt) + s w_j,   w_j = (exp(lambda_j dt) - 1) / (lambda_j L'(lambda_j)).

#include <memory>
#include <span>
#include <vector>

#include "tgm/spectral.hpp"

namespace tgm {

/// Relative tolerance below which a root counts as zero or repeated.
inline constexpr double kDegeneracyTolerance = 1e-9;

/// Roots of sum_n a_n lambda^n + kappa (with multiplicity), polished so that
/// |L(lambda_j)| <= 1e-9 max(1, |kappa|). Throws InvalidOperator for degree 0.
std::vector<Complex> find_eigenvalues(std::span<const double> time_coeffs, Complex kappa);
std::vector<Complex> find_eigenvalues(const OperatorSpec& spec, Complex kappa);

/// L(lambda) and L'(lambda) for the mode polynomial.
Complex characteristic_value(std::span<const double> time_coeffs, Complex kappa, Complex lambda);
Complex characteristic_derivative(std::span<const double> time_coeffs, Complex lambda);

struct ModePlan {
  double wavenumber = 0.0;
  Complex symbol;
  std::vector<double> time_coeffs;
  std::vector<Complex> eigenvalues;
  std::vector<Complex> derivative_values;
  /// Set when a root is zero or repeated; such modes advance through zero_mode_step.
  bool degenerate = false;

  std::size_t order() const { return eigenvalues.size(); }
};

using PlanPtr = std::shared_ptr<const ModePlan>;

ModePlan make_mode_plan(std::span<const double> time_coeffs, Complex kappa, double wavenumber = 0.0);
ModePlan make_mode_plan(const OperatorSpec& spec, double wavenumber);

/// Boxcar injection weights w_j for a step of width dt. Throws DegenerateModeError for degenerate plans.
std::vector<Complex> green_weights(const ModePlan& plan, double dt);

/**
 * Per-mode solver state.
 *
 * For regular plans `values` holds F_j, one per eigenvalue. For degenerate
 * plans it holds the Taylor data (u, u', ...) at `time`.
 */
struct ModeState {
  PlanPtr plan;
  std::vector<Complex> values;
  double time = 0.0;
};

/// Quiescent state: every F_j (or Taylor coefficient) zero at t0.
ModeState init_from_rest(PlanPtr plan, double t0 = 0.0);

/// One step of width dt with a source held at `source_amp` (sampled at the step midpoint).
/// Degenerate plans are routed to zero_mode_step.
ModeState step(const ModeState& state, Complex source_amp, double dt);

/// Exact update under a constant source for a mode whose roots are all zero
/// (first- or second-order operators with K + a_0 = 0 and, for order two, a_1 = 0).
ModeState zero_mode_step(const ModeState& state, Complex source_amp, double dt);

/// u(t) for t >= state.time. Throws OutOfWindowError for earlier times.
Complex reconstruct(const ModeState& state, double t);

/// Whole-grid solver: one mode per wavenumber, all advanced in lock step.
struct SolverState {
  GridPtr grid;
  std::vector<ModeState> modes;
  std::size_t step_count = 0;
  double last_dt = 0.0;

  double time() const { return modes.empty() ? 0.0 : modes.front().time; }
};

SolverState init_solver(const GridPtr& grid, const OperatorSpec& spec, double t0 = 0.0);

/// Advances every mode by dt with the given per-mode source amplitudes.
void advance(SolverState& solver, const SpectralField& source_amps, double dt);

/// Spectral solution at t >= solver.time().
SpectralField reconstruct_field(const SolverState& solver, double t);

}  // namespace tgm
