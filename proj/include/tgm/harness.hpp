#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tgm/equations.hpp"
#include "tgm/spectral.hpp"

namespace tgm {

enum class Scheme { tgm, fdm };

std::string_view to_string(EquationKind kind);
std::string_view to_string(Scheme scheme);

/// Error norms above this (or non-finite) mark a run as diverged.
inline constexpr double kDivergenceCutoff = 1e6;

struct ExperimentConfig {
  EquationKind equation = EquationKind::wave;
  Scheme scheme = Scheme::tgm;
  std::size_t n_points = 64;
  double length = 10.0;
  double c = 1.0;
  double dt = 0.01;
  double t_end = 1.0;
  double omega0 = 3.14159265358979323846;
  double x0 = 5.0;
  double sigma = 0.5;
  double amplitude = 1.0;
  /// Output times; empty means {t_end}.
  std::vector<double> snapshot_times;
  std::string output_dir = ".";

  /// 64 points over length 10, c = 1, dt = 0.01, snapshot at t = 1, omega0 = pi.
  static ExperimentConfig default_wave();
  /// 64 points over length 10, c = 3, dt = 0.001, snapshot at t = 0.1, omega0 = 20.
  static ExperimentConfig default_diffusion();

  /// Throws ConfigError on any violated constraint.
  void validate() const;

  std::vector<double> output_times() const;
  SourceModel source() const { return {x0, sigma, omega0, amplitude}; }
};

/// Parses flat `key = value` text (`#` starts a comment). `equation` selects the
/// preset the remaining keys override. Unknown or repeated keys are errors.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Analytic solution on the grid (discrete normalization) plus the modes it cannot evaluate.
struct ExactSpectrum {
  SpectralField field;
  std::vector<std::uint8_t> excluded;
  std::size_t excluded_count() const;
};

/// Per-mode discrete source amplitudes: continuous spectrum / period, Hermitian-projected.
SpectralField discrete_source_spectrum(const ExperimentConfig& config, const GridPtr& grid);
ExactSpectrum exact_spectrum(const ExperimentConfig& config, const GridPtr& grid, double t);

/// Step widths from 0 to t_end: uniform dt, shortened where needed to land on every stop time.
std::vector<double> step_schedule(double t_end, double dt, std::span<const double> stops);

struct Snapshot {
  double t = 0.0;
  SpectralField numeric;
  ExactSpectrum exact;
  /// Real-space fields; numeric samples are NaN once a run has diverged.
  std::vector<double> u_real;
  std::vector<double> u_exact;
  double imag_residue = 0.0;
  double er = 0.0;
};

struct ExperimentResult {
  GridPtr grid;
  ExperimentConfig config;
  std::vector<Snapshot> snapshots;
  std::size_t steps = 0;
  bool diverged = false;
};

/// Runs the configured scheme from rest. A non-finite TGM value raises InternalError;
/// a non-finite FDM value stops the run and marks it diverged.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct ErrorNorm {
  double value = 0.0;
  std::size_t excluded_modes = 0;
};

/// sqrt(sum_k |u(k) - u_E(k)|^2).
double error_norm(const SpectralField& field, const SpectralField& exact);
/// Same, skipping the modes flagged in `exact.excluded`.
ErrorNorm error_norm(const SpectralField& field, const ExactSpectrum& exact);

struct ErrorRecord {
  double dt = 0.0;
  double t = 0.0;
  double er = 0.0;
  bool diverged = false;
};

ErrorRecord make_error_record(double dt, double t, double er);

struct SweepRow {
  double dt = 0.0;
  ErrorRecord tgm;
  ErrorRecord fdm;
};

/// Both schemes at every dt, error taken at config.t_end. Diverged runs are flagged, not thrown.
std::vector<SweepRow> dt_sweep(const ExperimentConfig& config, std::span<const double> dts);

std::vector<ErrorRecord> scheme_records(std::span<const SweepRow> rows, Scheme scheme);

/// Least-squares slope of log(er) against log(dt) over non-diverged records.
/// Throws InsufficientData with fewer than three usable points.
double fit_order(std::span<const ErrorRecord> records);

/// Sweep grids straddling the stability thresholds of the default problems.
std::vector<double> default_sweep(EquationKind kind);

// CSV export: header row, '.' decimals, 17 significant digits.
void export_snapshots_csv(const std::filesystem::path& path, const ExperimentResult& result);
void export_spectra_csv(const std::filesystem::path& path, const ExperimentResult& result);
void export_sweep_csv(const std::filesystem::path& path, std::span<const SweepRow> rows);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace tgm
