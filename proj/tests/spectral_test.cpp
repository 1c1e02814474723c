#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "tgm/equations.hpp"
#include "tgm/errors.hpp"
#include "tgm/spectral.hpp"

using namespace tgm;
using std::numbers::pi;

TEST_CASE("make_grid spacing and wavenumbers") {
  const auto g = make_grid(64, 10.0);
  CHECK(g->dx() == doctest::Approx(10.0 / 63.0).epsilon(1e-15));
  CHECK(g->dx() == doctest::Approx(0.15873).epsilon(1e-5));
  CHECK(g->period() == doctest::Approx(640.0 / 63.0).epsilon(1e-15));
  CHECK(g->k_max() == doctest::Approx(pi * 63.0 / 10.0).epsilon(1e-14));
  CHECK(g->k_max() == doctest::Approx(19.792).epsilon(1e-4));

  int zeros = 0;
  double max_abs = 0.0;
  for (double k : g->wavenumbers()) {
    zeros += k == 0.0;
    max_abs = std::max(max_abs, std::abs(k));
  }
  CHECK(zeros == 1);
  CHECK(max_abs == doctest::Approx(g->k_max()).epsilon(1e-14));
  CHECK(g->wavenumber(g->nyquist_index()) == doctest::Approx(-g->k_max()).epsilon(1e-14));
  for (std::size_t m = 1; m < g->size(); ++m) {
    if (m == g->nyquist_index()) continue;
    CHECK(g->wavenumber(g->partner_index(m)) == doctest::Approx(-g->wavenumber(m)).epsilon(1e-14));
  }
}

TEST_CASE("smallest grid holds only the zero and Nyquist modes") {
  const auto g = make_grid(2, 1.0);
  REQUIRE(g->size() == 2);
  CHECK(g->wavenumber(0) == 0.0);
  CHECK(g->wavenumber(1) == doctest::Approx(-pi / g->dx()));
}

TEST_CASE("make_grid rejects bad arguments") {
  CHECK_THROWS_AS(make_grid(63, 10.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(0, 10.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(64, 0.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(64, -1.0), InvalidArgument);
}

TEST_CASE("forward transform of simple signals") {
  const auto g = make_grid(16, 3.0);
  SUBCASE("constant") {
    const std::vector<double> ones(16, 1.0);
    const auto f = dft_forward(ones, g);
    CHECK(std::abs(f[0] - 1.0) < 1e-15);
    for (std::size_t m = 1; m < 16; ++m) CHECK(std::abs(f[m]) < 1e-15);
  }
  SUBCASE("single harmonic") {
    std::vector<double> s(16);
    for (std::size_t j = 0; j < 16; ++j) s[j] = std::cos(g->wavenumber(1) * g->x(j));
    const auto f = dft_forward(s, g);
    CHECK(std::abs(f[1] - 0.5) < 1e-15);
    CHECK(std::abs(f[15] - 0.5) < 1e-15);
    CHECK(std::abs(f[0]) < 1e-15);
    CHECK(std::abs(f[2]) < 1e-15);
  }
  SUBCASE("length mismatch") {
    const std::vector<double> s(15, 0.0);
    CHECK_THROWS_AS(dft_forward(s, g), InvalidArgument);
  }
}

TEST_CASE("sampled Gaussian matches the analytic spectrum") {
  // Discrete amplitude = continuous transform / period while the Gaussian sits
  // well inside one period.
  const auto g = make_grid(64, 10.0);
  const SourceModel src{5.0, 0.5, 1.0, 1.0};
  std::vector<double> s(64);
  for (std::size_t j = 0; j < 64; ++j) {
    const double d = g->x(j) - 5.0;
    s[j] = std::exp(-d * d / (2.0 * 0.25));
  }
  const auto f = dft_forward(s, g);
  for (std::size_t m = 0; m < 64; ++m) {
    const double k = g->wavenumber(m);
    if (std::abs(k) >= 0.5 * g->k_max()) continue;
    const Complex expected = gaussian_source_spectrum(src, k) / g->period();
    CHECK(std::abs(f[m] - expected) / std::abs(expected) < 1e-6);
  }
}

TEST_CASE("round trip and Parseval on random input") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {2u, 8u, 64u, 100u}) {
    const auto g = make_grid(n, 7.0);
    std::vector<double> s(n);
    for (auto& v : s) v = u(rng);
    const auto f = dft_forward(s, g);
    CHECK(hermitian_defect(f) < 1e-14);

    const auto back = dft_inverse(f);
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(back.values[j] - s[j]));
    CHECK(worst < 1e-12);
    CHECK(back.imag_residue < 1e-12);

    double energy = 0.0, spectral = 0.0;
    for (double v : s) energy += v * v;
    for (const auto& a : f.amplitudes) spectral += std::norm(a);
    CHECK(energy == doctest::Approx(static_cast<double>(n) * spectral).epsilon(1e-10));
  }
}

TEST_CASE("inverse transform of DC and broken symmetry") {
  const auto g = make_grid(8, 1.0);
  SpectralField f(g);
  f[0] = 1.0;
  const auto s = dft_inverse(f);
  for (double v : s.values) CHECK(v == doctest::Approx(1.0));

  f[3] += Complex(1e-3, 0.0);
  CHECK_THROWS_AS(dft_inverse(f), NonRealFieldError);
}

TEST_CASE("enforce_hermitian makes the self-conjugate bins real") {
  const auto g = make_grid(8, 1.0);
  SpectralField f(g, {Complex(1, 2), Complex(3, 4), Complex(0, 1), Complex(5, 5), Complex(2, 7),
                      Complex(1, 1), Complex(0, -1), Complex(3, -4)});
  enforce_hermitian(f);
  CHECK(f[0].imag() == 0.0);
  CHECK(f[4].imag() == 0.0);
  CHECK(hermitian_defect(f) == 0.0);
  CHECK_NOTHROW(dft_inverse(f));
}

TEST_CASE("spatial symbol") {
  SUBCASE("diffusion -c d2/dx2 at k=2") {
    const auto op = diffusion_operator({3.0});
    const Complex K = spatial_symbol(op, 2.0);
    CHECK(K.real() == doctest::Approx(12.0));
    CHECK(K.imag() == 0.0);
  }
  SUBCASE("wave -d2/dx2 gives k^2") {
    const auto op = wave_operator({1.0});
    for (double k : {0.5, -3.0, 19.79}) CHECK(spatial_symbol(op, k) == Complex(k * k, 0.0));
  }
  SUBCASE("first derivative") {
    const OperatorSpec op({0.0, 1.0}, {{MultiIndex{1, 0, 0}, 1.0}});
    CHECK(spatial_symbol(op, 3.0) == Complex(0.0, 3.0));
  }
  SUBCASE("three dimensions") {
    const OperatorSpec op({0.0, 1.0},
                          {{MultiIndex{2, 0, 0}, -1.0}, {MultiIndex{0, 2, 0}, -1.0},
                           {MultiIndex{0, 0, 2}, -1.0}, {MultiIndex{1, 1, 0}, 2.0}},
                          3);
    const double k[3] = {1.0, 2.0, 3.0};
    // 1 + 4 + 9 + 2*(i)(2i) = 14 - 4
    CHECK(spatial_symbol(op, k) == Complex(10.0, 0.0));
    const double k2[2] = {1.0, 2.0};
    CHECK_THROWS_AS(spatial_symbol(op, std::span<const double>(k2, 2)), InvalidArgument);
  }
}

TEST_CASE("spatial symbol conjugate symmetry and sign on the grid") {
  const OperatorSpec mixed({0.0, 1.0}, {{MultiIndex{1, 0, 0}, 0.7}, {MultiIndex{2, 0, 0}, -1.3},
                                        {MultiIndex{3, 0, 0}, 0.2}});
  const auto g = make_grid(64, 10.0);
  const auto wave = wave_operator({1.0});
  const auto diff = diffusion_operator({3.0});
  for (double k : g->wavenumbers()) {
    CHECK(spatial_symbol(mixed, -k) == std::conj(spatial_symbol(mixed, k)));
    for (const auto* op : {&wave, &diff}) {
      const Complex K = spatial_symbol(*op, k);
      CHECK(K.imag() == 0.0);
      CHECK(K.real() >= 0.0);
    }
  }
}

TEST_CASE("operator validation") {
  CHECK_THROWS_AS(OperatorSpec({1.0}, {{MultiIndex{2, 0, 0}, 1.0}}), InvalidOperator);
  CHECK_THROWS_AS(OperatorSpec({0.0, 1.0, 0.0}, {}), InvalidOperator);
  CHECK_THROWS_AS(OperatorSpec({0.0, 1.0}, {{MultiIndex{0, 1, 0}, 1.0}}, 1), InvalidOperator);
  CHECK_THROWS_AS(OperatorSpec({0.0, 1.0}, {{MultiIndex{1, 0, 0}, 1.0}}, 4), InvalidOperator);
  const OperatorSpec trimmed({0.0, 2.0, 0.0, 0.0}, {{MultiIndex{2, 0, 0}, 1.0}});
  CHECK(trimmed.time_order() == 1);
}
