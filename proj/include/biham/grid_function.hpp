#pragma once

// Spectral calculus for smooth 2π-periodic real functions sampled on a
// uniform grid x_j = 2π j / N. All operations are pure; values are immutable
// once built and safe to share between threads.
//
// Products are de-aliased by zero-padding to a 2N grid, which represents the
// product of two band-limited interpolants exactly before truncating back to
// the working band |n| <= N/2. Integrals of triple products computed as
// integral(multiply(multiply(f, g), h)) are exact for the same reason: the
// final truncation is an orthogonal projection against the band-limited
// remaining factor.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "biham/detail/fft.hpp"
#include "biham/errors.hpp"

namespace biham {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Full spectrum of a real grid function, indexed by wavenumber
/// n = -N/2+1 .. N/2. Hermitian symmetry c_{-n} = conj(c_n) holds by
/// construction; the Nyquist coefficient is real.
class Spectrum {
 public:
  Spectrum(std::size_t grid_n, std::vector<std::complex<double>> half)
      : n_(grid_n), half_(std::move(half)) {}

  std::size_t grid_size() const { return n_; }
  int min_wavenumber() const { return -static_cast<int>(n_) / 2 + 1; }
  int max_wavenumber() const { return static_cast<int>(n_) / 2; }

  std::complex<double> coeff(int n) const {
    if (n < min_wavenumber() || n > max_wavenumber())
      throw IndexOutOfRange("wavenumber " + std::to_string(n) + " out of range");
    return n >= 0 ? half_[static_cast<std::size_t>(n)]
                  : std::conj(half_[static_cast<std::size_t>(-n)]);
  }

  const std::vector<std::complex<double>>& half_complex() const { return half_; }

 private:
  std::size_t n_;
  std::vector<std::complex<double>> half_;  // modes 0 .. N/2
};

namespace detail {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void check_grid_size(std::size_t n) {
  if (n < 16 || !is_power_of_two(n))
    throw InvalidArgument("grid size must be a power of two >= 16, got " + std::to_string(n));
}

// Neumaier-compensated sum; keeps quadrature roundoff near one ulp.
inline double compensated_sum(const std::vector<double>& v) {
  double s = 0.0, c = 0.0;
  for (double x : v) {
    double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  return s + c;
}

}  // namespace detail

class GridFunction {
 public:
  explicit GridFunction(std::size_t n) : samples_(n, 0.0) { detail::check_grid_size(n); }

  explicit GridFunction(std::vector<double> samples) : samples_(std::move(samples)) {
    detail::check_grid_size(samples_.size());
  }

  static GridFunction constant(std::size_t n, double c) {
    GridFunction f(n);
    std::fill(f.samples_.begin(), f.samples_.end(), c);
    return f;
  }

  static GridFunction from_profile(std::size_t n, const std::function<double(double)>& profile) {
    GridFunction f(n);
    for (std::size_t j = 0; j < n; ++j) f.samples_[j] = profile(f.x(j));
    return f;
  }

  static GridFunction from_spectrum(const Spectrum& s) {
    return GridFunction(detail::fft_inverse(s.half_complex(), s.grid_size()));
  }

  std::size_t size() const { return samples_.size(); }
  double x(std::size_t j) const { return kTwoPi * static_cast<double>(j) / static_cast<double>(size()); }
  const std::vector<double>& samples() const { return samples_; }
  double operator[](std::size_t j) const { return samples_[j]; }

  Spectrum spectrum() const { return Spectrum(size(), detail::fft_forward(samples_)); }

  GridFunction& operator+=(const GridFunction& g) {
    check_same_grid(g);
    for (std::size_t j = 0; j < size(); ++j) samples_[j] += g.samples_[j];
    return *this;
  }
  GridFunction& operator-=(const GridFunction& g) {
    check_same_grid(g);
    for (std::size_t j = 0; j < size(); ++j) samples_[j] -= g.samples_[j];
    return *this;
  }
  GridFunction& operator*=(double a) {
    for (double& s : samples_) s *= a;
    return *this;
  }
  GridFunction& operator+=(double c) {
    for (double& s : samples_) s += c;
    return *this;
  }

  friend GridFunction operator+(GridFunction f, const GridFunction& g) { return f += g; }
  friend GridFunction operator-(GridFunction f, const GridFunction& g) { return f -= g; }
  friend GridFunction operator+(GridFunction f, double c) { return f += c; }
  friend GridFunction operator*(double a, GridFunction f) { return f *= a; }
  friend GridFunction operator-(GridFunction f) { return f *= -1.0; }

  void check_same_grid(const GridFunction& g) const {
    if (size() != g.size()) throw GridMismatch(size(), g.size());
  }

 private:
  std::vector<double> samples_;
};

inline double mean(const GridFunction& f) {
  return detail::compensated_sum(f.samples()) / static_cast<double>(f.size());
}

/// ∫_{S¹} f dx with the circle normalized to circumference 2π. Spectrally
/// exact for band-limited integrands.
inline double integral(const GridFunction& f) { return kTwoPi * mean(f); }

/// Spectral derivative. The Nyquist mode is annihilated (its derivative is
/// not representable on the grid); the output has exactly zero mean.
inline GridFunction derivative(const GridFunction& f) {
  auto c = detail::fft_forward(f.samples());
  const std::size_t half = c.size() - 1;
  c[0] = 0.0;
  for (std::size_t k = 1; k < half; ++k)
    c[k] *= std::complex<double>(0.0, static_cast<double>(k));
  c[half] = 0.0;
  return GridFunction(detail::fft_inverse(c, f.size()));
}

/// The unique zero-mean primitive of a zero-mean function (the inverse of D
/// restricted to C₀^∞). Throws NotZeroMean when |mean(f)| > tol_mean, which
/// along the Lenard ladder signals leaving the image of D.
inline GridFunction antiderivative_zero_mean(const GridFunction& f, double tol_mean = 1e-10) {
  const double m = mean(f);
  if (std::abs(m) > tol_mean) throw NotZeroMean(m);
  auto c = detail::fft_forward(f.samples());
  const std::size_t half = c.size() - 1;
  c[0] = 0.0;
  for (std::size_t k = 1; k < half; ++k)
    c[k] /= std::complex<double>(0.0, static_cast<double>(k));
  c[half] = 0.0;
  return GridFunction(detail::fft_inverse(c, f.size()));
}

/// De-aliased pointwise product: the two interpolants are multiplied exactly
/// on a 2N grid and the result is truncated back to modes |n| < N/2.
inline GridFunction multiply(const GridFunction& f, const GridFunction& g) {
  f.check_same_grid(g);
  const std::size_t n = f.size();
  const std::size_t big = 2 * n;
  auto cf = detail::fft_forward(f.samples());
  auto cg = detail::fft_forward(g.samples());
  std::vector<std::complex<double>> pf(big / 2 + 1, 0.0), pg(big / 2 + 1, 0.0);
  for (std::size_t k = 0; k < n / 2; ++k) {
    pf[k] = cf[k];
    pg[k] = cg[k];
  }
  // Nyquist splits into interior ±N/2 modes on the fine grid.
  pf[n / 2] = 0.5 * cf[n / 2];
  pg[n / 2] = 0.5 * cg[n / 2];
  auto xf = detail::fft_inverse(pf, big);
  auto xg = detail::fft_inverse(pg, big);
  for (std::size_t j = 0; j < big; ++j) xf[j] *= xg[j];
  auto cp = detail::fft_forward(xf);
  std::vector<std::complex<double>> out(n / 2 + 1, 0.0);
  for (std::size_t k = 0; k < n / 2; ++k) out[k] = cp[k];
  return GridFunction(detail::fft_inverse(out, n));
}

/// L² inner product ⟨f, g⟩ = ∫ f g dx; exact for band-limited factors.
inline double l2_inner(const GridFunction& f, const GridFunction& g) {
  f.check_same_grid(g);
  const std::size_t n = f.size();
  std::vector<double> prod(n);
  double sf = 0.0, sg = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    prod[j] = f[j] * g[j];
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    sf += sign * f[j];
    sg += sign * g[j];
  }
  // Quadrature of the sampled product is exact except that the two Nyquist
  // modes alias onto the mean with double weight; remove the excess.
  const double nyquist_excess = 0.5 * (sf / n) * (sg / n);
  return kTwoPi * (detail::compensated_sum(prod) / static_cast<double>(n) - nyquist_excess);
}

inline double l2_norm(const GridFunction& f) { return std::sqrt(std::max(0.0, l2_inner(f, f))); }

inline double max_abs(const GridFunction& f) {
  double m = 0.0;
  for (double s : f.samples()) m = std::max(m, std::abs(s));
  return m;
}

inline double max_abs_diff(const GridFunction& f, const GridFunction& g) {
  f.check_same_grid(g);
  double m = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) m = std::max(m, std::abs(f[j] - g[j]));
  return m;
}

/// Band-limited random function: modes 1..max_mode with i.i.d. uniform
/// [-1, 1] cosine/sine coefficients, drawn in mode order from a seeded
/// generator. Shared by every property suite.
inline GridFunction random_band_limited(std::size_t n, std::uint64_t seed, int max_mode = 8) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> a(static_cast<std::size_t>(max_mode)), b(static_cast<std::size_t>(max_mode));
  for (int k = 0; k < max_mode; ++k) {
    a[static_cast<std::size_t>(k)] = unit(rng);
    b[static_cast<std::size_t>(k)] = unit(rng);
  }
  std::vector<double> samples(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    double s = 0.0;
    for (int k = 1; k <= max_mode; ++k)
      s += a[static_cast<std::size_t>(k - 1)] * std::cos(k * x) +
           b[static_cast<std::size_t>(k - 1)] * std::sin(k * x);
    samples[j] = s;
  }
  return GridFunction(std::move(samples));
}

}  // namespace biham
