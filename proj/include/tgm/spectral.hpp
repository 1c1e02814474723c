#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <vector>

namespace tgm {

using Complex = std::complex<double>;

/**
 * Uniform 1-D periodic sample grid and its discrete wavenumbers.
 *
 * Samples sit at x_j = j*dx with dx = length/(n-1); the transform treats the
 * domain as periodic with period n*dx. Wavenumbers are stored in transform
 * order: index m holds k = 2*pi*m/(n*dx) for m < n/2 and the negative
 * frequency m - n otherwise, so the Nyquist bin (index n/2) is -pi/dx.
 */
class SpectralGrid {
 public:
  SpectralGrid(std::size_t n_points, double length);

  std::size_t size() const { return wavenumbers_.size(); }
  double dx() const { return dx_; }
  double length() const { return length_; }
  double period() const { return dx_ * static_cast<double>(size()); }
  double x(std::size_t j) const { return dx_ * static_cast<double>(j); }

  std::span<const double> wavenumbers() const { return wavenumbers_; }
  double wavenumber(std::size_t m) const { return wavenumbers_[m]; }
  /// pi/dx, the magnitude of the Nyquist wavenumber.
  double k_max() const;

  std::size_t nyquist_index() const { return size() / 2; }
  /// Index of the bin holding -k (the Nyquist and zero bins are their own partners).
  std::size_t partner_index(std::size_t m) const { return (size() - m) % size(); }

  bool operator==(const SpectralGrid& other) const {
    return size() == other.size() && dx_ == other.dx_;
  }

 private:
  double length_;
  double dx_;
  std::vector<double> wavenumbers_;
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

/// Throws InvalidArgument for odd or < 2 point counts and non-positive length.
GridPtr make_grid(std::size_t n_points, double length);

/// One complex amplitude per grid wavenumber.
struct SpectralField {
  GridPtr grid;
  std::vector<Complex> amplitudes;

  explicit SpectralField(GridPtr g);
  SpectralField(GridPtr g, std::vector<Complex> values);

  std::size_t size() const { return amplitudes.size(); }
  Complex& operator[](std::size_t m) { return amplitudes[m]; }
  const Complex& operator[](std::size_t m) const { return amplitudes[m]; }
};

/// max_m |a(-k_m) - conj(a(k_m))| divided by max_m |a(k_m)| (0 for an all-zero field).
double hermitian_defect(const SpectralField& field);

/// Projects onto the Hermitian subspace; the zero and Nyquist bins become real.
void enforce_hermitian(SpectralField& field);

/// amplitudes[m] = (1/n) sum_j samples[j] exp(-i k_m x_j).
SpectralField dft_forward(std::span<const double> samples, const GridPtr& grid);

struct RealSignal {
  std::vector<double> values;
  /// Largest discarded imaginary part relative to the largest sample magnitude.
  double imag_residue = 0.0;
};

/// samples[j] = sum_m amplitudes[m] exp(i k_m x_j). Throws NonRealFieldError
/// when the discarded imaginary residue exceeds `tolerance` (relative).
RealSignal dft_inverse(const SpectralField& field, double tolerance = 1e-10);

/// Exponents of d/dx, d/dy, d/dz in one spatial derivative term.
struct MultiIndex {
  int x = 0;
  int y = 0;
  int z = 0;

  auto operator<=>(const MultiIndex&) const = default;
};

/**
 * Constant-coefficient operator sum_n a_n d^n/dt^n + sum b_lmn d^l/dx^l d^m/dy^m d^n/dz^n.
 *
 * Trailing zero time coefficients are trimmed; the remaining order must be at
 * least one and at least one spatial term must be present.
 */
class OperatorSpec {
 public:
  OperatorSpec(std::vector<double> time_coeffs, std::map<MultiIndex, double> spatial_coeffs,
               int dimension = 1);

  const std::vector<double>& time_coeffs() const { return time_coeffs_; }
  const std::map<MultiIndex, double>& spatial_coeffs() const { return spatial_coeffs_; }
  int dimension() const { return dimension_; }
  std::size_t time_order() const { return time_coeffs_.size() - 1; }

 private:
  std::vector<double> time_coeffs_;
  std::map<MultiIndex, double> spatial_coeffs_;
  int dimension_;
};

/// Fourier symbol K(k) = sum b_lmn (i k_x)^l (i k_y)^m (i k_z)^n; k.size() must equal the dimension.
Complex spatial_symbol(const OperatorSpec& spec, std::span<const double> k);

/// 1-D convenience overload.
Complex spatial_symbol(const OperatorSpec& spec, double k);

}  // namespace tgm
