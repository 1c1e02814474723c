#include "tgm/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include <fmt/format.h>

#include "tgm/errors.hpp"

namespace tgm {

namespace {

// The FFTW planner is not reentrant; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
 public:
  FftPlan(std::vector<Complex>& in, std::vector<Complex>& out, int sign) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(in.size()),
                             reinterpret_cast<fftw_complex*>(in.data()),
                             reinterpret_cast<fftw_complex*>(out.data()), sign, FFTW_ESTIMATE);
    if (plan_ == nullptr) throw InternalError("fftw planner failed");
  }
  ~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

// (i*k)^n with the power of i applied exactly.
Complex i_power(double k, int n) {
  const double mag = std::pow(k, n);
  switch (n % 4) {
    case 0: return {mag, 0.0};
    case 1: return {0.0, mag};
    case 2: return {-mag, 0.0};
    default: return {0.0, -mag};
  }
}

double max_magnitude(std::span<const Complex> values) {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

SpectralGrid::SpectralGrid(std::size_t n_points, double length) : length_(length) {
  if (n_points < 2 || n_points % 2 != 0)
    throw InvalidArgument(fmt::format("grid needs an even point count >= 2, got {}", n_points));
  if (!(length > 0.0) || !std::isfinite(length))
    throw InvalidArgument(fmt::format("grid length must be positive, got {}", length));

  dx_ = length / static_cast<double>(n_points - 1);
  const auto n = static_cast<long>(n_points);
  const double base = 2.0 * std::numbers::pi / (static_cast<double>(n_points) * dx_);
  wavenumbers_.resize(n_points);
  for (long m = 0; m < n; ++m) {
    const long signed_m = m < n / 2 ? m : m - n;
    wavenumbers_[static_cast<std::size_t>(m)] = base * static_cast<double>(signed_m);
  }
}

double SpectralGrid::k_max() const { return std::numbers::pi / dx_; }

GridPtr make_grid(std::size_t n_points, double length) {
  return std::make_shared<const SpectralGrid>(n_points, length);
}

SpectralField::SpectralField(GridPtr g) : grid(std::move(g)) {
  if (!grid) throw InvalidArgument("spectral field needs a grid");
  amplitudes.assign(grid->size(), Complex{});
}

SpectralField::SpectralField(GridPtr g, std::vector<Complex> values)
    : grid(std::move(g)), amplitudes(std::move(values)) {
  if (!grid) throw InvalidArgument("spectral field needs a grid");
  if (amplitudes.size() != grid->size())
    throw InvalidArgument(fmt::format("field has {} amplitudes for a {}-point grid",
                                      amplitudes.size(), grid->size()));
}

double hermitian_defect(const SpectralField& field) {
  const double scale = max_magnitude(field.amplitudes);
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t m = 0; m < field.size(); ++m) {
    const auto p = field.grid->partner_index(m);
    worst = std::max(worst, std::abs(field[p] - std::conj(field[m])));
  }
  return worst / scale;
}

void enforce_hermitian(SpectralField& field) {
  const std::size_t n = field.size();
  for (std::size_t m = 0; m <= n / 2; ++m) {
    const auto p = field.grid->partner_index(m);
    if (p == m) {
      field[m] = Complex(field[m].real(), 0.0);
    } else {
      const Complex avg = 0.5 * (field[m] + std::conj(field[p]));
      field[m] = avg;
      field[p] = std::conj(avg);
    }
  }
}

SpectralField dft_forward(std::span<const double> samples, const GridPtr& grid) {
  if (!grid) throw InvalidArgument("dft_forward needs a grid");
  if (samples.size() != grid->size())
    throw InvalidArgument(fmt::format("dft_forward: {} samples for a {}-point grid",
                                      samples.size(), grid->size()));
  std::vector<Complex> in(samples.begin(), samples.end());
  std::vector<Complex> out(in.size());
  FftPlan(in, out, FFTW_FORWARD).execute();
  const double inv_n = 1.0 / static_cast<double>(in.size());
  for (auto& a : out) a *= inv_n;
  return SpectralField(grid, std::move(out));
}

RealSignal dft_inverse(const SpectralField& field, double tolerance) {
  std::vector<Complex> in = field.amplitudes;
  std::vector<Complex> out(in.size());
  FftPlan(in, out, FFTW_BACKWARD).execute();

  RealSignal result;
  result.values.reserve(out.size());
  double peak = 0.0;
  double residue = 0.0;
  for (const auto& v : out) {
    result.values.push_back(v.real());
    peak = std::max(peak, std::abs(v));
    residue = std::max(residue, std::abs(v.imag()));
  }
  result.imag_residue = peak > 0.0 ? residue / peak : 0.0;
  if (!(result.imag_residue <= tolerance))
    throw NonRealFieldError(fmt::format("inverse transform has imaginary residue {:.3e} (limit {:.3e})",
                                        result.imag_residue, tolerance));
  return result;
}

OperatorSpec::OperatorSpec(std::vector<double> time_coeffs,
                           std::map<MultiIndex, double> spatial_coeffs, int dimension)
    : time_coeffs_(std::move(time_coeffs)),
      spatial_coeffs_(std::move(spatial_coeffs)),
      dimension_(dimension) {
  while (!time_coeffs_.empty() && time_coeffs_.back() == 0.0) time_coeffs_.pop_back();
  if (time_coeffs_.size() < 2)
    throw InvalidOperator("operator needs at least one time derivative with a nonzero coefficient");
  for (double a : time_coeffs_)
    if (!std::isfinite(a)) throw InvalidOperator("non-finite time coefficient");
  if (dimension_ < 1 || dimension_ > 3)
    throw InvalidOperator(fmt::format("dimension must be 1..3, got {}", dimension_));
  if (spatial_coeffs_.empty()) throw InvalidOperator("operator has no spatial term");
  for (const auto& [idx, b] : spatial_coeffs_) {
    if (idx.x < 0 || idx.y < 0 || idx.z < 0) throw InvalidOperator("negative derivative order");
    if ((dimension_ < 2 && idx.y != 0) || (dimension_ < 3 && idx.z != 0))
      throw InvalidOperator("derivative along an axis beyond the operator dimension");
    if (!std::isfinite(b)) throw InvalidOperator("non-finite spatial coefficient");
  }
}

Complex spatial_symbol(const OperatorSpec& spec, std::span<const double> k) {
  if (k.size() != static_cast<std::size_t>(spec.dimension()))
    throw InvalidArgument(fmt::format("wave vector has {} components, operator is {}-D", k.size(),
                                      spec.dimension()));
  const double kx = k[0];
  const double ky = k.size() > 1 ? k[1] : 0.0;
  const double kz = k.size() > 2 ? k[2] : 0.0;
  Complex sum{};
  for (const auto& [idx, b] : spec.spatial_coeffs()) {
    sum += b * i_power(kx, idx.x) * i_power(ky, idx.y) * i_power(kz, idx.z);
  }
  return sum;
}

Complex spatial_symbol(const OperatorSpec& spec, double k) {
  const double kv[1] = {k};
  return spatial_symbol(spec, std::span<const double>(kv, 1));
}

}  // namespace tgm
