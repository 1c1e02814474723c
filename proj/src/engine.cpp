#include "tgm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "tgm/errors.hpp"

namespace tgm {

namespace {

std::vector<double> trimmed(std::span<const double> coeffs) {
  std::vector<double> a(coeffs.begin(), coeffs.end());
  while (!a.empty() && a.back() == 0.0) a.pop_back();
  return a;
}

Complex eval_poly(std::span<const Complex> c, Complex z) {
  Complex acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex eval_poly_derivative(std::span<const Complex> c, Complex z) {
  Complex acc{};
  for (std::size_t n = c.size() - 1; n >= 1; --n) acc = acc * z + static_cast<double>(n) * c[n];
  return acc;
}

// Roots of c[0] + c[1] z + c[2] z^2 without cancellation.
std::vector<Complex> quadratic_roots(Complex c0, Complex c1, Complex c2) {
  const Complex disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
  const Complex q = std::real(std::conj(c1) * disc) >= 0.0 ? -0.5 * (c1 + disc) : -0.5 * (c1 - disc);
  if (q == Complex{}) return {Complex{}, Complex{}};
  return {q / c2, c0 / q};
}

// Weierstrass (Durand-Kerner) iteration on the monic polynomial, followed by
// Newton polishing against the original coefficients.
std::vector<Complex> durand_kerner(std::span<const Complex> c) {
  const std::size_t p = c.size() - 1;
  std::vector<Complex> monic(c.begin(), c.end());
  for (auto& v : monic) v /= c[p];

  double radius = 0.0;  // Cauchy bound
  for (std::size_t n = 0; n < p; ++n) radius = std::max(radius, std::abs(monic[n]));
  radius = 1.0 + radius;

  std::vector<Complex> roots(p);
  const Complex seed(0.4, 0.9);
  Complex z = radius / std::abs(seed) * 0.5;
  for (auto& r : roots) {
    r = z;
    z *= seed;
  }

  for (int iter = 0; iter < 2000; ++iter) {
    double change = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      Complex denom = 1.0;
      for (std::size_t j = 0; j < p; ++j)
        if (j != i) denom *= roots[i] - roots[j];
      if (denom == Complex{}) denom = Complex(1e-300, 0.0);
      const Complex delta = eval_poly(monic, roots[i]) / denom;
      roots[i] -= delta;
      change = std::max(change, std::abs(delta) / std::max(1.0, std::abs(roots[i])));
    }
    if (change < 1e-15) break;
  }

  for (auto& r : roots) {
    for (int k = 0; k < 4; ++k) {
      const Complex d = eval_poly_derivative(c, r);
      if (d == Complex{}) break;
      const Complex next = r - eval_poly(c, r) / d;
      if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
      if (std::abs(eval_poly(c, next)) >= std::abs(eval_poly(c, r))) break;
      r = next;
    }
  }
  return roots;
}

// (exp(z) - 1) / z, accurate near zero and for complex z.
Complex phi1(Complex z) {
  if (std::abs(z) < 1e-5) return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
  const double x = z.real();
  const double y = z.imag();
  const double s = std::sin(0.5 * y);
  const Complex expm1_z(std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y));
  return expm1_z / z;
}

void check_step_inputs(Complex source_amp, double dt) {
  if (!std::isfinite(dt) || !(dt > 0.0))
    throw NumericalInputError(fmt::format("step width must be positive and finite, got {}", dt));
  if (!std::isfinite(source_amp.real()) || !std::isfinite(source_amp.imag()))
    throw NumericalInputError("non-finite source amplitude");
}

double coefficient_scale(const ModePlan& plan) {
  double s = 1.0;
  for (double a : plan.time_coeffs) s = std::max(s, std::abs(a));
  return s;
}

}  // namespace

Complex characteristic_value(std::span<const double> time_coeffs, Complex kappa, Complex lambda) {
  Complex acc{};
  for (auto it = time_coeffs.rbegin(); it != time_coeffs.rend(); ++it) acc = acc * lambda + *it;
  return acc + kappa;
}

Complex characteristic_derivative(std::span<const double> time_coeffs, Complex lambda) {
  Complex acc{};
  for (std::size_t n = time_coeffs.size() - 1; n >= 1; --n)
    acc = acc * lambda + static_cast<double>(n) * time_coeffs[n];
  return acc;
}

std::vector<Complex> find_eigenvalues(std::span<const double> time_coeffs, Complex kappa) {
  const auto a = trimmed(time_coeffs);
  if (a.size() < 2) throw InvalidOperator("characteristic polynomial has degree 0");

  std::vector<Complex> c(a.begin(), a.end());
  c[0] += kappa;

  std::vector<Complex> roots;
  if (c.size() == 2) {
    roots = {-c[0] / c[1]};
  } else if (c.size() == 3) {
    roots = quadratic_roots(c[0], c[1], c[2]);
  } else {
    roots = durand_kerner(c);
  }
  std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) {
    return x.imag() != y.imag() ? x.imag() > y.imag() : x.real() > y.real();
  });
  return roots;
}

std::vector<Complex> find_eigenvalues(const OperatorSpec& spec, Complex kappa) {
  return find_eigenvalues(spec.time_coeffs(), kappa);
}

ModePlan make_mode_plan(std::span<const double> time_coeffs, Complex kappa, double wavenumber) {
  ModePlan plan;
  plan.wavenumber = wavenumber;
  plan.symbol = kappa;
  plan.time_coeffs = trimmed(time_coeffs);
  plan.eigenvalues = find_eigenvalues(plan.time_coeffs, kappa);
  for (const auto& lambda : plan.eigenvalues)
    plan.derivative_values.push_back(characteristic_derivative(plan.time_coeffs, lambda));

  double scale = 1.0;
  for (const auto& lambda : plan.eigenvalues) scale = std::max(scale, std::abs(lambda));
  const double tol = kDegeneracyTolerance * scale;
  for (std::size_t i = 0; i < plan.order() && !plan.degenerate; ++i) {
    if (std::abs(plan.eigenvalues[i]) < tol) plan.degenerate = true;
    for (std::size_t j = i + 1; j < plan.order(); ++j)
      if (std::abs(plan.eigenvalues[i] - plan.eigenvalues[j]) < tol) plan.degenerate = true;
  }
  return plan;
}

ModePlan make_mode_plan(const OperatorSpec& spec, double wavenumber) {
  if (spec.dimension() != 1)
    throw InvalidArgument("mode plans on a 1-D grid need a 1-D operator");
  return make_mode_plan(spec.time_coeffs(), spatial_symbol(spec, wavenumber), wavenumber);
}

std::vector<Complex> green_weights(const ModePlan& plan, double dt) {
  if (plan.degenerate)
    throw DegenerateModeError(
        fmt::format("mode k={} has a zero or repeated root; use zero_mode_step", plan.wavenumber));
  check_step_inputs(Complex{}, dt);
  std::vector<Complex> w;
  w.reserve(plan.order());
  for (std::size_t j = 0; j < plan.order(); ++j)
    w.push_back(dt * phi1(plan.eigenvalues[j] * dt) / plan.derivative_values[j]);
  return w;
}

ModeState init_from_rest(PlanPtr plan, double t0) {
  if (!plan) throw InvalidArgument("init_from_rest needs a plan");
  ModeState state;
  state.values.assign(plan->order(), Complex{});
  state.plan = std::move(plan);
  state.time = t0;
  return state;
}

ModeState step(const ModeState& state, Complex source_amp, double dt) {
  if (state.plan->degenerate) return zero_mode_step(state, source_amp, dt);
  check_step_inputs(source_amp, dt);
  const ModePlan& plan = *state.plan;
  const auto w = green_weights(plan, dt);
  ModeState next = state;
  for (std::size_t j = 0; j < plan.order(); ++j)
    next.values[j] = state.values[j] * std::exp(plan.eigenvalues[j] * dt) + source_amp * w[j];
  next.time = state.time + dt;
  return next;
}

ModeState zero_mode_step(const ModeState& state, Complex source_amp, double dt) {
  const ModePlan& plan = *state.plan;
  if (!plan.degenerate) throw InvalidArgument("zero_mode_step called on a regular mode");
  check_step_inputs(source_amp, dt);

  const auto& a = plan.time_coeffs;
  const double tol = kDegeneracyTolerance * coefficient_scale(plan);
  const bool supported = (plan.order() == 1 && std::abs(a[0] + plan.symbol) <= tol) ||
                         (plan.order() == 2 && std::abs(a[0] + plan.symbol) <= tol &&
                          std::abs(a[1]) <= tol);
  if (!supported)
    throw UnsupportedDegeneracy(fmt::format(
        "degenerate mode k={} of an order-{} operator is not a pure zero mode", plan.wavenumber,
        plan.order()));

  ModeState next = state;
  if (plan.order() == 1) {
    next.values[0] = state.values[0] + source_amp * dt / a[1];
  } else {
    const Complex accel = source_amp / a[2];
    next.values[0] = state.values[0] + state.values[1] * dt + 0.5 * accel * dt * dt;
    next.values[1] = state.values[1] + accel * dt;
  }
  next.time = state.time + dt;
  return next;
}

Complex reconstruct(const ModeState& state, double t) {
  if (t < state.time - 1e-12 * std::max(1.0, std::abs(state.time)))
    throw OutOfWindowError(
        fmt::format("cannot evaluate at t={} before the last step time {}", t, state.time));
  const double tau = std::max(0.0, t - state.time);
  const ModePlan& plan = *state.plan;

  Complex u{};
  if (plan.degenerate) {
    double term = 1.0;  // tau^i / i!
    for (std::size_t i = 0; i < state.values.size(); ++i) {
      u += state.values[i] * term;
      term *= tau / static_cast<double>(i + 1);
    }
    return u;
  }
  for (std::size_t j = 0; j < plan.order(); ++j)
    u += state.values[j] * std::exp(plan.eigenvalues[j] * tau);
  return u;
}

SolverState init_solver(const GridPtr& grid, const OperatorSpec& spec, double t0) {
  if (!grid) throw InvalidArgument("init_solver needs a grid");
  SolverState solver;
  solver.grid = grid;
  solver.modes.reserve(grid->size());
  for (double k : grid->wavenumbers())
    solver.modes.push_back(
        init_from_rest(std::make_shared<const ModePlan>(make_mode_plan(spec, k)), t0));
  return solver;
}

void advance(SolverState& solver, const SpectralField& source_amps, double dt) {
  if (!(*source_amps.grid == *solver.grid))
    throw InvalidArgument("source field lives on a different grid");
  for (std::size_t m = 0; m < solver.modes.size(); ++m)
    solver.modes[m] = step(solver.modes[m], source_amps[m], dt);
  ++solver.step_count;
  solver.last_dt = dt;
}

SpectralField reconstruct_field(const SolverState& solver, double t) {
  SpectralField field(solver.grid);
  for (std::size_t m = 0; m < solver.modes.size(); ++m) field[m] = reconstruct(solver.modes[m], t);
  return field;
}

}  // namespace tgm
