#include "tgm/verify/rk4.hpp"

#include <algorithm>
#include <cmath>

#include "tgm/errors.hpp"

namespace tgm::verify {

namespace {

using State = std::vector<Complex>;

struct ModeOde {
  std::span<const double> a;
  Complex kappa;
  const Forcing& forcing;

  // d/dt of (y, y', ..., y^(p-1)).
  State rhs(double t, const State& y) const {
    const std::size_t p = y.size();
    State dy(p);
    for (std::size_t i = 0; i + 1 < p; ++i) dy[i] = y[i + 1];
    Complex top = forcing(t) - kappa * y[0];
    for (std::size_t n = 0; n < p; ++n) top -= a[n] * y[n];
    dy[p - 1] = top / a[p];
    return dy;
  }

  State rk4(double t, const State& y, double h) const {
    auto axpy = [](const State& base, const State& d, double s) {
      State out(base.size());
      for (std::size_t i = 0; i < base.size(); ++i) out[i] = base[i] + s * d[i];
      return out;
    };
    const State k1 = rhs(t, y);
    const State k2 = rhs(t + 0.5 * h, axpy(y, k1, 0.5 * h));
    const State k3 = rhs(t + 0.5 * h, axpy(y, k2, 0.5 * h));
    const State k4 = rhs(t + h, axpy(y, k3, h));
    State out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
      out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
  }
};

}  // namespace

std::vector<Complex> integrate_mode(std::span<const double> time_coeffs, Complex kappa,
                                    const Forcing& forcing, std::vector<Complex> state, double t0,
                                    double t1, double rel_tol) {
  std::size_t p = time_coeffs.size();
  while (p > 0 && time_coeffs[p - 1] == 0.0) --p;
  if (p < 2) throw InvalidOperator("integrate_mode needs an operator of order >= 1");
  if (state.size() != p - 1) throw InvalidArgument("state size must equal the operator order");
  if (t1 <= t0) return state;

  const ModeOde ode{time_coeffs.first(p), kappa, forcing};

  // Initial step from the fastest natural rate of the mode.
  double rate = std::abs(kappa + time_coeffs[0]) / std::abs(time_coeffs[p - 1]);
  rate = std::pow(std::max(rate, 1e-300), 1.0 / static_cast<double>(p - 1));
  for (std::size_t n = 1; n + 1 < p; ++n)
    rate = std::max(rate, std::abs(time_coeffs[n] / time_coeffs[p - 1]));
  double h = std::min(t1 - t0, 1e-3 / std::max(rate, 1.0));

  std::vector<double> seen(state.size(), 0.0);
  for (std::size_t i = 0; i < state.size(); ++i) seen[i] = std::abs(state[i]);

  double t = t0;
  const double h_min = 1e-14 * std::max(1.0, std::abs(t1));
  while (t < t1) {
    h = std::min(h, t1 - t);
    const State full = ode.rk4(t, state, h);
    const State half = ode.rk4(t + 0.5 * h, ode.rk4(t, state, 0.5 * h), 0.5 * h);

    double ratio = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
      const double scale = std::max(seen[i], std::abs(half[i]));
      const double err = std::abs(half[i] - full[i]) / 15.0;
      if (scale > 0.0) ratio = std::max(ratio, err / (rel_tol * scale));
      else if (err > 0.0) ratio = std::max(ratio, 1e30);
    }

    if (ratio <= 1.0 || h <= h_min) {
      for (std::size_t i = 0; i < state.size(); ++i) {
        state[i] = half[i] + (half[i] - full[i]) / 15.0;
        seen[i] = std::max(seen[i], std::abs(state[i]));
      }
      t += h;
    }
    const double grow = ratio > 0.0 ? 0.9 * std::pow(ratio, -0.2) : 4.0;
    h *= std::clamp(grow, 0.1, 4.0);
    h = std::max(h, h_min);
  }
  return state;
}

Complex boxcar_response(std::span<const double> time_coeffs, Complex kappa, double pulse_start,
                        double pulse_end, double t_eval) {
  if (t_eval < pulse_end) throw OutOfWindowError("boxcar_response evaluates after the pulse only");
  std::size_t p = time_coeffs.size();
  while (p > 0 && time_coeffs[p - 1] == 0.0) --p;
  std::vector<Complex> state(p > 0 ? p - 1 : 0, Complex{});
  const Forcing on = [](double) { return Complex(1.0, 0.0); };
  const Forcing off = [](double) { return Complex{}; };
  state = integrate_mode(time_coeffs, kappa, on, std::move(state), pulse_start, pulse_end);
  state = integrate_mode(time_coeffs, kappa, off, std::move(state), pulse_end, t_eval);
  return state.front();
}

Complex driven_response(std::span<const double> time_coeffs, Complex kappa, Complex amplitude,
                        double omega0, double t) {
  std::size_t p = time_coeffs.size();
  while (p > 0 && time_coeffs[p - 1] == 0.0) --p;
  std::vector<Complex> state(p > 0 ? p - 1 : 0, Complex{});
  const Forcing f = [&](double s) { return amplitude * std::sin(omega0 * s); };
  return integrate_mode(time_coeffs, kappa, f, std::move(state), 0.0, t).front();
}

}  // namespace tgm::verify
