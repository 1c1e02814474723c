#pragma once

#include <vector>

#include "tgm/spectral.hpp"

namespace tgm {

enum class EquationKind { wave, diffusion };

/// (1/c^2) u_tt - u_xx = S
struct WaveParams {
  double c = 1.0;
};

/// u_t - c u_xx = S
struct DiffusionParams {
  double c = 1.0;
};

/// S(x,t) = amplitude * exp(-(x-x0)^2 / (2 sigma^2)) * sin(omega0 t) for t >= 0, zero before.
struct SourceModel {
  double x0 = 5.0;
  double sigma = 0.5;
  double omega0 = 1.0;
  double amplitude = 1.0;
};

OperatorSpec wave_operator(const WaveParams& params);
OperatorSpec diffusion_operator(const DiffusionParams& params);

/// Continuous transform integral S(x) exp(-ikx) dx of the spatial profile:
/// amplitude * sqrt(2 pi sigma^2) exp(-k^2 sigma^2 / 2) exp(-i k x0).
Complex gaussian_source_spectrum(const SourceModel& src, double k);

/// sin(omega0 t_mid) for t_mid >= 0, else 0.
double source_time_amplitude(const SourceModel& src, double t_mid);

/// sinh(x)/x and sin(x)/x, by series for |x| < 1e-4.
double sinhc(double x);
double sinc(double x);

// ---------------------------------------------------------------------------
// Wave equation, closed form.

/// Response at t >= t_N of (1/c^2) G'' + k^2 G = boxcar(t_N - dt, t_N):
/// -(i/k^2) sin(kc dt/2) [exp(ikc(t - t_N + dt/2)) - exp(-ikc(t - t_N + dt/2))].
/// Throws DegenerateModeError for k = 0 and OutOfWindowError for t < t_N.
Complex wave_green(double k, const WaveParams& params, double t, double t_N, double dt);

/// State in the closed-form normalization: u = -(i/k^2)[e^{ikc tau} F+ - e^{-ikc tau} F-].
struct WaveModeState {
  double k = 0.0;
  double c = 1.0;
  Complex f_plus;
  Complex f_minus;
  double time = 0.0;
};

/// F+- <- F+- e^{+-ikc dt} + S e^{+-ikc dt/2} sin(kc dt/2). Throws DegenerateModeError for k = 0.
WaveModeState wave_step(const WaveModeState& state, Complex source_amp, double dt);
Complex wave_reconstruct(const WaveModeState& state, double t);

/// The same state expressed as generic-engine coefficients, ordered like the
/// engine's eigenvalues of the wave operator: {coefficient of e^{+i|k|c tau}, of e^{-i|k|c tau}}.
std::vector<Complex> wave_engine_values(const WaveModeState& state);

// ---------------------------------------------------------------------------
// Diffusion equation, closed form.

/// dt sinh(ck^2 dt/2)/(ck^2 dt/2) exp(-ck^2 (t - t_N + dt/2)); equals dt at k = 0.
double diffusion_green(double k, const DiffusionParams& params, double t, double t_N, double dt);

struct DiffusionModeState {
  double k = 0.0;
  double c = 1.0;
  Complex value;
  double time = 0.0;
};

DiffusionModeState diffusion_step(const DiffusionModeState& state, Complex source_amp, double dt);
Complex diffusion_reconstruct(const DiffusionModeState& state, double t);

// ---------------------------------------------------------------------------
// Exact transient solutions from rest for the Gaussian-sinusoid source,
// in the same continuous normalization as gaussian_source_spectrum.

/// |omega0 - c|k|| <= 1e-6 omega0.
bool is_resonant(double k, const WaveParams& params, const SourceModel& src);

/// c^2 S(k) / (omega0^2 - (ck)^2) [(omega0/ck) sin(ckt) - sin(omega0 t)], with the
/// k -> 0 limit c^2 S(0) (omega0 t - sin(omega0 t)) / omega0^2. Throws NearResonanceError.
Complex exact_wave(double k, const WaveParams& params, const SourceModel& src, double t);

/// S(k) / ((ck^2)^2 + omega0^2) [omega0 e^{-ck^2 t} + ck^2 sin(omega0 t) - omega0 cos(omega0 t)].
Complex exact_diffusion(double k, const DiffusionParams& params, const SourceModel& src, double t);

}  // namespace tgm
