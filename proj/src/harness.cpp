#include "tgm/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "tgm/baselines.hpp"
#include "tgm/engine.hpp"
#include "tgm/errors.hpp"

namespace tgm {

namespace {

bool all_finite(const SpectralField& f) {
  return std::all_of(f.amplitudes.begin(), f.amplitudes.end(), [](const Complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

SpectralField nan_field(const GridPtr& grid) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return SpectralField(grid, std::vector<Complex>(grid->size(), Complex(nan, nan)));
}

// Fields at each requested time for one scheme; stops early once FDM blows up.
struct Trajectory {
  std::vector<SpectralField> fields;
  std::size_t steps = 0;
  bool diverged = false;
};

Trajectory simulate(const ExperimentConfig& cfg, const GridPtr& grid, std::span<const double> times) {
  std::vector<double> stops(times.begin(), times.end());
  std::sort(stops.begin(), stops.end());
  const auto schedule = step_schedule(cfg.t_end, cfg.dt, stops);
  const SpectralField spectrum = discrete_source_spectrum(cfg, grid);
  const SourceModel src = cfg.source();
  const std::size_t n = grid->size();

  std::vector<SpectralField> at_stop;
  at_stop.reserve(stops.size());
  Trajectory out;

  if (cfg.scheme == Scheme::tgm) {
    const OperatorSpec op = cfg.equation == EquationKind::wave ? wave_operator({cfg.c})
                                                               : diffusion_operator({cfg.c});
    SolverState solver = init_solver(grid, op);
    SpectralField source(grid);
    std::size_t next_stop = 0;
    auto emit = [&] {
      while (next_stop < stops.size() && stops[next_stop] <= solver.time() + 1e-12 * cfg.t_end) {
        SpectralField f = reconstruct_field(solver, std::max(solver.time(), stops[next_stop]));
        if (!all_finite(f))
          throw InternalError(fmt::format("TGM produced a non-finite value at t={}", solver.time()));
        at_stop.push_back(std::move(f));
        ++next_stop;
      }
    };
    emit();
    for (double h : schedule) {
      const double amp = source_time_amplitude(src, solver.time() + 0.5 * h);
      for (std::size_t m = 0; m < n; ++m) source[m] = spectrum[m] * amp;
      advance(solver, source, h);
      emit();
    }
    out.steps = solver.step_count;
  } else {
    std::vector<FdmModeState> modes(n, fdm_rest_state());
    double t = 0.0;
    std::size_t next_stop = 0;
    auto current = [&] {
      SpectralField f(grid);
      for (std::size_t m = 0; m < n; ++m) f[m] = modes[m].current;
      return f;
    };
    auto emit = [&] {
      while (next_stop < stops.size() && stops[next_stop] <= t + 1e-12 * cfg.t_end) {
        at_stop.push_back(current());
        ++next_stop;
      }
    };
    emit();
    for (double h : schedule) {
      const double amp = source_time_amplitude(src, t);
      bool finite = true;
      for (std::size_t m = 0; m < n; ++m) {
        const double k = grid->wavenumber(m);
        modes[m] = cfg.equation == EquationKind::wave
                       ? fdm_leapfrog_wave_step(modes[m], k, cfg.c, spectrum[m] * amp, h)
                       : fdm_euler_diffusion_step(modes[m], k, cfg.c, spectrum[m] * amp, h);
        finite = finite && std::isfinite(modes[m].current.real()) &&
                 std::isfinite(modes[m].current.imag());
      }
      t += h;
      ++out.steps;
      if (!finite) {
        out.diverged = true;
        break;
      }
      emit();
    }
    while (at_stop.size() < stops.size()) at_stop.push_back(nan_field(grid));
  }

  // Back to the caller's ordering.
  out.fields.reserve(times.size());
  for (double t : times) {
    const auto idx = static_cast<std::size_t>(std::lower_bound(stops.begin(), stops.end(), t) - stops.begin());
    out.fields.push_back(at_stop[idx]);
  }
  return out;
}

}  // namespace

std::size_t ExactSpectrum::excluded_count() const {
  return static_cast<std::size_t>(std::count(excluded.begin(), excluded.end(), std::uint8_t{1}));
}

SpectralField discrete_source_spectrum(const ExperimentConfig& config, const GridPtr& grid) {
  const SourceModel src = config.source();
  SpectralField f(grid);
  for (std::size_t m = 0; m < grid->size(); ++m)
    f[m] = gaussian_source_spectrum(src, grid->wavenumber(m)) / grid->period();
  enforce_hermitian(f);
  return f;
}

ExactSpectrum exact_spectrum(const ExperimentConfig& config, const GridPtr& grid, double t) {
  const SourceModel src = config.source();
  ExactSpectrum out{SpectralField(grid), std::vector<std::uint8_t>(grid->size(), 0)};
  for (std::size_t m = 0; m < grid->size(); ++m) {
    const double k = grid->wavenumber(m);
    if (config.equation == EquationKind::wave) {
      const WaveParams params{config.c};
      if (is_resonant(k, params, src)) {
        out.excluded[m] = 1;
        continue;
      }
      out.field[m] = exact_wave(k, params, src, t) / grid->period();
    } else {
      out.field[m] = exact_diffusion(k, DiffusionParams{config.c}, src, t) / grid->period();
    }
  }
  enforce_hermitian(out.field);
  return out;
}

std::vector<double> step_schedule(double t_end, double dt, std::span<const double> stops) {
  if (!(dt > 0.0) || !(t_end > 0.0)) throw InvalidArgument("step_schedule needs positive dt and t_end");
  std::vector<double> targets(stops.begin(), stops.end());
  targets.push_back(t_end);
  std::sort(targets.begin(), targets.end());

  std::vector<double> widths;
  double t = 0.0;
  const double slack = 1e-9 * dt;
  for (double target : targets) {
    if (target <= t + slack) continue;
    // Uniform steps measured from the last landing point keep t free of drift.
    const double start = t;
    std::size_t i = 0;
    while (true) {
      const double next = start + static_cast<double>(i + 1) * dt;
      if (next >= target - slack) {
        widths.push_back(target - t);
        t = target;
        break;
      }
      widths.push_back(next - t);
      t = next;
      ++i;
    }
  }
  return widths;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.config = config;
  result.grid = make_grid(config.n_points, config.length);
  const auto times = config.output_times();
  Trajectory traj = simulate(config, result.grid, times);
  result.steps = traj.steps;
  result.diverged = traj.diverged;

  for (std::size_t i = 0; i < times.size(); ++i) {
    Snapshot snap{times[i], std::move(traj.fields[i]),
                  exact_spectrum(config, result.grid, times[i]), {}, {}, 0.0, 0.0};
    snap.er = error_norm(snap.numeric, snap.exact).value;
    snap.u_exact = dft_inverse(snap.exact.field).values;
    if (all_finite(snap.numeric)) {
      // The residue check is strict only for TGM, which must stay real.
      const double tol = config.scheme == Scheme::tgm ? 1e-10 : std::numeric_limits<double>::infinity();
      auto real = dft_inverse(snap.numeric, tol);
      snap.u_real = std::move(real.values);
      snap.imag_residue = real.imag_residue;
    } else {
      snap.u_real.assign(result.grid->size(), std::numeric_limits<double>::quiet_NaN());
      snap.imag_residue = std::numeric_limits<double>::quiet_NaN();
    }
    result.snapshots.push_back(std::move(snap));
  }
  return result;
}

double error_norm(const SpectralField& field, const SpectralField& exact) {
  if (!(*field.grid == *exact.grid)) throw InvalidArgument("error_norm: fields live on different grids");
  double sum = 0.0;
  for (std::size_t m = 0; m < field.size(); ++m) sum += std::norm(field[m] - exact[m]);
  return std::sqrt(sum);
}

ErrorNorm error_norm(const SpectralField& field, const ExactSpectrum& exact) {
  if (!(*field.grid == *exact.field.grid))
    throw InvalidArgument("error_norm: fields live on different grids");
  ErrorNorm out;
  double sum = 0.0;
  for (std::size_t m = 0; m < field.size(); ++m) {
    if (exact.excluded[m]) {
      ++out.excluded_modes;
      continue;
    }
    sum += std::norm(field[m] - exact.field[m]);
  }
  out.value = std::sqrt(sum);
  return out;
}

ErrorRecord make_error_record(double dt, double t, double er) {
  return {dt, t, er, !std::isfinite(er) || er > kDivergenceCutoff};
}

std::vector<SweepRow> dt_sweep(const ExperimentConfig& config, std::span<const double> dts) {
  std::vector<SweepRow> rows;
  if (dts.empty()) return rows;
  const GridPtr grid = make_grid(config.n_points, config.length);
  const double t = config.t_end;
  const ExactSpectrum exact = exact_spectrum(config, grid, t);
  const double times[1] = {t};

  for (double dt : dts) {
    if (!(dt > 0.0) || !std::isfinite(dt))
      throw InvalidArgument(fmt::format("sweep step width must be positive, got {}", dt));
    ExperimentConfig cfg = config;
    cfg.dt = dt;
    cfg.snapshot_times.clear();
    cfg.validate();

    SweepRow row{dt, {}, {}};
    for (Scheme scheme : {Scheme::tgm, Scheme::fdm}) {
      cfg.scheme = scheme;
      const Trajectory traj = simulate(cfg, grid, times);
      const double er = traj.diverged ? std::numeric_limits<double>::infinity()
                                       : error_norm(traj.fields.front(), exact).value;
      (scheme == Scheme::tgm ? row.tgm : row.fdm) = make_error_record(dt, t, er);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<ErrorRecord> scheme_records(std::span<const SweepRow> rows, Scheme scheme) {
  std::vector<ErrorRecord> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(scheme == Scheme::tgm ? r.tgm : r.fdm);
  return out;
}

double fit_order(std::span<const ErrorRecord> records) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : records)
    if (!r.diverged && r.dt > 0.0 && r.er > 0.0 && std::isfinite(r.er))
      pts.emplace_back(std::log(r.dt), std::log(r.er));
  if (pts.size() < 3)
    throw InsufficientData(fmt::format("order fit needs 3 usable points, have {}", pts.size()));

  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0.0) throw InsufficientData("order fit needs at least two distinct step widths");
  return sxy / sxx;
}

std::vector<double> default_sweep(EquationKind kind) {
  if (kind == EquationKind::wave) return {0.2, 0.1, 0.05, 0.025, 0.0125, 0.00625};
  return {0.016, 0.008, 0.004, 0.002, 0.001, 0.0005};
}

}  // namespace tgm
