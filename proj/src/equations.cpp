#include "tgm/equations.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "tgm/errors.hpp"

namespace tgm {

namespace {

constexpr Complex kI(0.0, 1.0);

// Beyond this half-argument sinh overflows long before the product underflows,
// so the boxcar weight switches to its expm1 form.
constexpr double kSinhLimit = 300.0;

void check_window(double t, double t_N) {
  if (t < t_N - 1e-12 * std::max(1.0, std::abs(t_N)))
    throw OutOfWindowError(fmt::format("t={} precedes the step end t_N={}", t, t_N));
}

void check_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw InvalidArgument(fmt::format("{} must be positive and finite, got {}", what, value));
}

// dt sinh(x/2)/(x/2) e^{-x/2} with x = rate*dt; the diffusion boxcar injection factor.
double diffusion_weight(double rate, double dt) {
  const double half = 0.5 * rate * dt;
  if (half < kSinhLimit) return dt * sinhc(half) * std::exp(-half);
  return -std::expm1(-rate * dt) / rate;
}

}  // namespace

OperatorSpec wave_operator(const WaveParams& params) {
  check_positive(params.c, "wave speed");
  return OperatorSpec({0.0, 0.0, 1.0 / (params.c * params.c)}, {{MultiIndex{2, 0, 0}, -1.0}});
}

OperatorSpec diffusion_operator(const DiffusionParams& params) {
  check_positive(params.c, "diffusion coefficient");
  return OperatorSpec({0.0, 1.0}, {{MultiIndex{2, 0, 0}, -params.c}});
}

Complex gaussian_source_spectrum(const SourceModel& src, double k) {
  const double s2 = src.sigma * src.sigma;
  return src.amplitude * std::sqrt(2.0 * std::numbers::pi * s2) * std::exp(-0.5 * k * k * s2) *
         std::exp(Complex(0.0, -k * src.x0));
}

double source_time_amplitude(const SourceModel& src, double t_mid) {
  return t_mid < 0.0 ? 0.0 : std::sin(src.omega0 * t_mid);
}

double sinhc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 + x * x / 6.0;
  return std::sinh(x) / x;
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

Complex wave_green(double k, const WaveParams& params, double t, double t_N, double dt) {
  if (k == 0.0) throw DegenerateModeError("wave Green's function is singular at k = 0");
  check_window(t, t_N);
  const double kc = k * params.c;
  const double phase = kc * (t - t_N + 0.5 * dt);
  return -kI / (k * k) * std::sin(0.5 * kc * dt) *
         (std::exp(Complex(0.0, phase)) - std::exp(Complex(0.0, -phase)));
}

WaveModeState wave_step(const WaveModeState& state, Complex source_amp, double dt) {
  if (state.k == 0.0) throw DegenerateModeError("k = 0 wave mode must use the zero-mode step");
  const double kc = state.k * state.c;
  const double inject = std::sin(0.5 * kc * dt);
  WaveModeState next = state;
  next.f_plus = state.f_plus * std::exp(Complex(0.0, kc * dt)) +
                source_amp * std::exp(Complex(0.0, 0.5 * kc * dt)) * inject;
  next.f_minus = state.f_minus * std::exp(Complex(0.0, -kc * dt)) +
                 source_amp * std::exp(Complex(0.0, -0.5 * kc * dt)) * inject;
  next.time = state.time + dt;
  return next;
}

Complex wave_reconstruct(const WaveModeState& state, double t) {
  if (state.k == 0.0) throw DegenerateModeError("k = 0 wave mode has no closed-form reconstruction");
  check_window(t, state.time);
  const double kc = state.k * state.c;
  const double tau = t - state.time;
  return -kI / (state.k * state.k) *
         (std::exp(Complex(0.0, kc * tau)) * state.f_plus -
          std::exp(Complex(0.0, -kc * tau)) * state.f_minus);
}

std::vector<Complex> wave_engine_values(const WaveModeState& state) {
  const double k2 = state.k * state.k;
  const Complex plus = -kI / k2 * state.f_plus;    // multiplies e^{+ikc tau}
  const Complex minus = kI / k2 * state.f_minus;   // multiplies e^{-ikc tau}
  if (state.k * state.c > 0.0) return {plus, minus};
  return {minus, plus};
}

double diffusion_green(double k, const DiffusionParams& params, double t, double t_N, double dt) {
  check_window(t, t_N);
  const double rate = params.c * k * k;
  return diffusion_weight(rate, dt) * std::exp(-rate * (t - t_N));
}

DiffusionModeState diffusion_step(const DiffusionModeState& state, Complex source_amp, double dt) {
  const double rate = state.c * state.k * state.k;
  DiffusionModeState next = state;
  next.value = state.value * std::exp(-rate * dt) + diffusion_weight(rate, dt) * source_amp;
  next.time = state.time + dt;
  return next;
}

Complex diffusion_reconstruct(const DiffusionModeState& state, double t) {
  check_window(t, state.time);
  return state.value * std::exp(-state.c * state.k * state.k * (t - state.time));
}

bool is_resonant(double k, const WaveParams& params, const SourceModel& src) {
  return std::abs(src.omega0 - params.c * std::abs(k)) <= 1e-6 * std::abs(src.omega0);
}

Complex exact_wave(double k, const WaveParams& params, const SourceModel& src, double t) {
  if (is_resonant(k, params, src))
    throw NearResonanceError(
        fmt::format("omega0={} resonates with mode k={} (c={})", src.omega0, k, params.c));
  const double ck = params.c * k;
  const double w0 = src.omega0;
  const double bracket = w0 * t * sinc(ck * t) - std::sin(w0 * t);
  return params.c * params.c * gaussian_source_spectrum(src, k) * bracket / (w0 * w0 - ck * ck);
}

Complex exact_diffusion(double k, const DiffusionParams& params, const SourceModel& src, double t) {
  const double rate = params.c * k * k;
  const double w0 = src.omega0;
  const double bracket =
      w0 * std::exp(-rate * t) + rate * std::sin(w0 * t) - w0 * std::cos(w0 * t);
  return gaussian_source_spectrum(src, k) * bracket / (rate * rate + w0 * w0);
}

}  // namespace tgm
