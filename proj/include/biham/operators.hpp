#pragma once

// Lie-algebraic operators on Vect(S¹) and its regular dual: the vector-field
// bracket, the coadjoint action, the Lie-Poisson operator P_m = mD + Dm,
// constant-coefficient even-order inertia operators A, and affine-structure
// (cocycle) operators Q = m₀D + Dm₀ + βD³.
//
// Constant-coefficient operators act in spectral space where they are exact;
// variable-coefficient parts act in physical space through de-aliased
// products. Operators are immutable after construction and application is
// pure.

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "biham/errors.hpp"
#include "biham/grid_function.hpp"

namespace biham {

/// [u, v] = u v_x - u_x v.
inline GridFunction bracket(const GridFunction& u, const GridFunction& v) {
  u.check_same_grid(v);
  return multiply(u, derivative(v)) - multiply(derivative(u), v);
}

/// ad*_u m = m u_x + (m u)_x = 2 m u_x + m_x u.
inline GridFunction coadjoint(const GridFunction& u, const GridFunction& m) {
  u.check_same_grid(m);
  return 2.0 * multiply(m, derivative(u)) + multiply(derivative(m), u);
}

/// Lie-Poisson operator applied to f: P_m f = m f_x + (m f)_x.
inline GridFunction lie_poisson_apply(const GridFunction& m, const GridFunction& f) {
  return coadjoint(f, m);
}

/// Constant-coefficient inertia operator A = Σ a_{2j} D^{2j}. The coefficient
/// list holds (a_0, a_2, ..., a_{2N}); the theorem case A = aI + bD² is
/// (a, b). The symbol s_A(n) = Σ a_{2j} (-1)^j n^{2j} is real; invertibility
/// on a grid means s_A(n) != 0 for all |n| <= N/2.
class InertiaOperator {
 public:
  explicit InertiaOperator(std::vector<double> even_coeffs)
      : coeffs_(std::move(even_coeffs)) {
    if (coeffs_.empty()) throw InvalidArgument("inertia operator needs at least one coefficient");
  }

  /// Validating constructor: checks invertibility against a grid up front.
  InertiaOperator(std::vector<double> even_coeffs, std::size_t grid_n)
      : InertiaOperator(std::move(even_coeffs)) {
    if (auto bad = first_singular_mode(grid_n)) throw SingularSymbol(*bad);
  }

  const std::vector<double>& even_coeffs() const { return coeffs_; }
  int order() const { return 2 * (static_cast<int>(coeffs_.size()) - 1); }

  double symbol(int n) const {
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    double s = 0.0, p = 1.0;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      s += coeffs_[j] * p;
      p *= -n2;
    }
    return s;
  }

  /// Smallest |n| <= N/2 with s_A(n) = 0, if any.
  std::optional<int> first_singular_mode(std::size_t grid_n) const {
    for (int n = 0; n <= static_cast<int>(grid_n) / 2; ++n)
      if (symbol(n) == 0.0) return n;
    return std::nullopt;
  }

  /// m = A u, computed modewise as multiplication by s_A(n).
  GridFunction apply(const GridFunction& u) const {
    auto c = detail::fft_forward(u.samples());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= symbol(static_cast<int>(k));
    return GridFunction(detail::fft_inverse(c, u.size()));
  }

  /// u = A⁻¹ m. Throws SingularSymbol (with the smallest offending
  /// wavenumber) when the symbol vanishes on the grid.
  GridFunction invert(const GridFunction& m) const {
    if (auto bad = first_singular_mode(m.size())) throw SingularSymbol(*bad);
    auto c = detail::fft_forward(m.samples());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] /= symbol(static_cast<int>(k));
    return GridFunction(detail::fft_inverse(c, m.size()));
  }

 private:
  std::vector<double> coeffs_;
};

inline GridFunction inertia_apply(const InertiaOperator& a, const GridFunction& u) {
  return a.apply(u);
}
inline GridFunction inertia_invert(const InertiaOperator& a, const GridFunction& m) {
  return a.invert(m);
}

/// Affine-structure operator Q = m₀D + Dm₀ + βD³, the normal form of a local
/// 2-cocycle. The affine part m₀ may be a constant (the case Q = αD + βD³
/// with α = 2m₀) or a grid function; inversion is defined only for constant
/// m₀, which is all the hierarchy needs (Q = DA).
class CocycleOperator {
 public:
  CocycleOperator(double m0, double beta) : m0_(m0), beta_(beta) {}
  CocycleOperator(GridFunction m0, double beta) : m0_(std::move(m0)), beta_(beta) {}

  /// Q = D A for A = aI + bD², i.e. m₀ = a/2 and β = b.
  static CocycleOperator from_inertia(const InertiaOperator& a) {
    const auto& c = a.even_coeffs();
    if (c.size() > 2)
      throw InvalidArgument("Q = DA has cocycle normal form only for order <= 2 inertia operators");
    return CocycleOperator(0.5 * c[0], c.size() > 1 ? c[1] : 0.0);
  }

  bool has_constant_m0() const { return std::holds_alternative<double>(m0_); }
  double beta() const { return beta_; }

  double constant_m0() const {
    if (!has_constant_m0()) throw NonConstantAffinePart();
    return std::get<double>(m0_);
  }

  GridFunction m0_grid(std::size_t n) const {
    if (has_constant_m0()) return GridFunction::constant(n, std::get<double>(m0_));
    return std::get<GridFunction>(m0_);
  }

  /// Q f = m₀ f_x + (m₀ f)_x + β f_xxx.
  GridFunction apply(const GridFunction& f) const {
    if (has_constant_m0()) {
      // αD + βD³ with α = 2m₀ acts modewise as i(αn - βn³).
      const double alpha = 2.0 * std::get<double>(m0_);
      auto c = detail::fft_forward(f.samples());
      const std::size_t half = c.size() - 1;
      c[0] = 0.0;
      for (std::size_t k = 1; k < half; ++k) {
        const double n = static_cast<double>(k);
        c[k] *= std::complex<double>(0.0, alpha * n - beta_ * n * n * n);
      }
      c[half] = 0.0;
      return GridFunction(detail::fft_inverse(c, f.size()));
    }
    const GridFunction& m0 = std::get<GridFunction>(m0_);
    m0.check_same_grid(f);
    GridFunction fx = derivative(f);
    GridFunction out = multiply(m0, fx);
    out += out;
    out += multiply(derivative(m0), f);
    out += beta_ * derivative(derivative(fx));
    return out;
  }

  /// Zero-mean g with Q g = f, for constant m₀. The symbol n(α - βn²) must
  /// not vanish at any grid mode n != 0; for Q = DA this is s_A(n) != 0.
  GridFunction invert(const GridFunction& f, double tol_mean = 1e-10) const {
    const double alpha = 2.0 * constant_m0();
    const double fm = mean(f);
    if (std::abs(fm) > tol_mean) throw NotZeroMean(fm);
    auto c = detail::fft_forward(f.samples());
    const std::size_t half = c.size() - 1;
    for (std::size_t k = 1; k < half; ++k) {
      const double n = static_cast<double>(k);
      const double sym = alpha * n - beta_ * n * n * n;
      if (sym == 0.0) throw SingularSymbol(static_cast<int>(k));
      c[k] /= std::complex<double>(0.0, sym);
    }
    c[0] = 0.0;
    c[half] = 0.0;
    return GridFunction(detail::fft_inverse(c, f.size()));
  }

 private:
  std::variant<double, GridFunction> m0_;
  double beta_;
};

inline GridFunction cocycle_apply(const CocycleOperator& q, const GridFunction& f) {
  return q.apply(f);
}
inline GridFunction cocycle_invert(const CocycleOperator& q, const GridFunction& f,
                                   double tol_mean = 1e-10) {
  return q.invert(f, tol_mean);
}

}  // namespace biham
