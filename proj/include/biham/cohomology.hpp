#pragma once

// Desk-scale Gelfand-Fuks computations: local 2-cochains as skew differential
// operators K = Σ a_k(x) D^k evaluated through γ(u, v) = <u, K v>, the
// coboundary of a point of the dual, the Chevalley-Eilenberg residual for
// 2-cochains, the Virasoro cocycle, the two-commutators decomposition behind
// H¹ = 0, and the H² classification K = λD³ + ∂m.
//
// Skewness is enforced at construction by projecting K onto (K - K*)/2,
// with K* expanded through integration by parts on the coefficient list.

#include <cmath>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "biham/errors.hpp"
#include "biham/grid_function.hpp"
#include "biham/operators.hpp"

namespace biham {

/// Coefficient of one derivative order: a constant or a periodic profile.
using CochainCoeff = std::variant<double, GridFunction>;

namespace detail {

inline GridFunction coeff_grid(const CochainCoeff& c, std::size_t n) {
  if (std::holds_alternative<double>(c)) return GridFunction::constant(n, std::get<double>(c));
  const GridFunction& g = std::get<GridFunction>(c);
  if (g.size() != n) throw GridMismatch(g.size(), n);
  return g;
}

inline std::size_t cochain_grid_size(const std::vector<CochainCoeff>& coeffs,
                                     std::size_t fallback) {
  for (const auto& c : coeffs)
    if (std::holds_alternative<GridFunction>(c)) return std::get<GridFunction>(c).size();
  return fallback;
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}

}  // namespace detail

/// A local 2-cochain γ(u, v) = <u, K v> with K = Σ_{k<=order} a_k(x) D^k,
/// K skew-adjoint. Derivative order is capped at 5; the classification's
/// constraints are already visible inside that family.
class TwoCochain {
 public:
  static constexpr int kMaxOrder = 5;

  /// Builds the cochain from raw coefficients, projecting onto the
  /// skew-adjoint part (K - K*)/2. A symmetric input (e.g. D²) projects to
  /// the zero cochain.
  explicit TwoCochain(std::vector<CochainCoeff> raw, std::size_t grid_n = 256)
      : n_(detail::cochain_grid_size(raw, grid_n)) {
    if (raw.empty()) throw InvalidArgument("two-cochain needs at least one coefficient");
    if (raw.size() > static_cast<std::size_t>(kMaxOrder) + 1)
      throw InvalidArgument("two-cochain derivative order is capped at 5");
    std::vector<GridFunction> a;
    a.reserve(raw.size());
    for (const auto& c : raw) a.push_back(detail::coeff_grid(c, n_));

    // K* = Σ_k (-1)^k D^k ∘ a_k = Σ_j [Σ_{k>=j} (-1)^k C(k,j) a_k^{(k-j)}] D^j.
    const int order = static_cast<int>(a.size()) - 1;
    std::vector<GridFunction> adj(a.size(), GridFunction(n_));
    for (int k = 0; k <= order; ++k) {
      GridFunction dk = a[static_cast<std::size_t>(k)];
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      for (int j = k; j >= 0; --j) {
        adj[static_cast<std::size_t>(j)] += (sign * detail::binomial(k, j)) * dk;
        if (j > 0) dk = derivative(dk);
      }
    }
    coeffs_.reserve(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) coeffs_.push_back(0.5 * (a[j] - adj[j]));
  }

  std::size_t grid_size() const { return n_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<GridFunction>& coeffs() const { return coeffs_; }

  GridFunction apply(const GridFunction& v) const {
    if (v.size() != n_) throw GridMismatch(v.size(), n_);
    GridFunction out(n_);
    GridFunction dv = v;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      out += multiply(coeffs_[k], dv);
      if (k + 1 < coeffs_.size()) dv = derivative(dv);
    }
    return out;
  }

  double eval(const GridFunction& u, const GridFunction& v) const { return l2_inner(u, apply(v)); }

 private:
  std::size_t n_;
  std::vector<GridFunction> coeffs_;
};

/// ∂m as a 2-cochain: the operator 2mD + m_x, i.e. u ↦ ad*_u m.
inline TwoCochain coboundary_1(const GridFunction& m) {
  return TwoCochain({derivative(m), 2.0 * m}, m.size());
}

/// Max over random band-limited triples of
/// |γ([u,v], w) + γ([v,w], u) + γ([w,u], v)| / (||u|| ||v|| ||w||).
inline double cocycle_residual_2(const TwoCochain& gamma, int triples = 20,
                                 std::uint64_t seed = 7) {
  double worst = 0.0;
  for (int i = 0; i < triples; ++i) {
    const std::uint64_t s = seed + 3 * static_cast<std::uint64_t>(i);
    const GridFunction u = random_band_limited(gamma.grid_size(), s);
    const GridFunction v = random_band_limited(gamma.grid_size(), s + 1);
    const GridFunction w = random_band_limited(gamma.grid_size(), s + 2);
    const double d = gamma.eval(bracket(u, v), w) + gamma.eval(bracket(v, w), u) +
                     gamma.eval(bracket(w, u), v);
    worst = std::max(worst, std::abs(d) / (l2_norm(u) * l2_norm(v) * l2_norm(w)));
  }
  return worst;
}

/// vir(u, v) = ∫ (u' v'' - v' u'') dx. Note vir(u, v) = -2 <u, D³ v>.
inline double virasoro(const GridFunction& u, const GridFunction& v) {
  u.check_same_grid(v);
  const GridFunction du = derivative(u);
  const GridFunction dv = derivative(v);
  return l2_inner(du, derivative(dv)) - l2_inner(dv, derivative(du));
}

struct CommutatorDecomposition {
  GridFunction W;       // u = [1, W] + c [cos, sin]
  double c;             // mean of u
  double residual;      // max |[1,W] + c[cos,sin] - u|
};

/// Writes u as a sum of two commutators: u = [1, W] + c·[cos, sin] with
/// c = mean(u) and W the zero-mean primitive of u - c.
inline CommutatorDecomposition decompose_commutators(const GridFunction& u) {
  const double c = mean(u);
  GridFunction w = antiderivative_zero_mean(u + (-c), 1e-6);
  const GridFunction cos1 = GridFunction::from_profile(u.size(), [](double x) { return std::cos(x); });
  const GridFunction sin1 = GridFunction::from_profile(u.size(), [](double x) { return std::sin(x); });
  const GridFunction recon = bracket(GridFunction::constant(u.size(), 1.0), w) +
                             c * bracket(cos1, sin1);
  return CommutatorDecomposition{std::move(w), c, max_abs_diff(recon, u)};
}

struct CocycleClassification {
  double lambda;
  GridFunction m;
  double residual;  // operator-norm estimate of K - λD³ - ∂m on the probe set
};

/// Extracts (λ, m) with K = λD³ + ∂m. Diagonal Fourier matrix elements
/// <K e_n, e_{-n}> = 2πi (2n mean(m) - λ n³) are least-squares fitted over
/// n = 2..8 for λ and mean(m); the oscillatory part of m comes from
/// K(1) = m_x. Throws NotACocycle when the cochain fails the cocycle test.
inline CocycleClassification classify_cocycle(const TwoCochain& gamma,
                                              double cocycle_tol = 1e-8) {
  const double cres = cocycle_residual_2(gamma);
  if (cres > cocycle_tol) throw NotACocycle(cres);
  const std::size_t n = gamma.grid_size();

  // Imag part of the diagonal element at wavenumber k: y_k = 2k m̄ - λ k³.
  // (The pairing is ∫ (K e_k) e_{-k} dx = <K cos_k, cos_k> + <K sin_k, sin_k>
  //  + i (<K sin_k, cos_k> - <K cos_k, sin_k>), divided by 2π.)
  double s22 = 0.0, s23 = 0.0, s33 = 0.0, b2 = 0.0, b3 = 0.0;
  for (int k = 2; k <= 8; ++k) {
    const GridFunction ck =
        GridFunction::from_profile(n, [k](double x) { return std::cos(k * x); });
    const GridFunction sk =
        GridFunction::from_profile(n, [k](double x) { return std::sin(k * x); });
    const double y = (gamma.eval(ck, sk) - gamma.eval(sk, ck)) / kTwoPi;
    const double t2 = 2.0 * k;
    const double t3 = -static_cast<double>(k) * k * k;
    s22 += t2 * t2;
    s23 += t2 * t3;
    s33 += t3 * t3;
    b2 += t2 * y;
    b3 += t3 * y;
  }
  const double det = s22 * s33 - s23 * s23;
  const double m_bar = (b2 * s33 - b3 * s23) / det;
  const double lambda = (s22 * b3 - s23 * b2) / det;

  GridFunction m = antiderivative_zero_mean(gamma.apply(GridFunction::constant(n, 1.0)), 1e-6);
  m += m_bar;

  // Residual sweep of K - λD³ - ∂m over low Fourier modes and random probes.
  auto remainder = [&](const GridFunction& v) {
    const GridFunction d3 = derivative(derivative(derivative(v)));
    return gamma.apply(v) - lambda * d3 -
           (2.0 * multiply(m, derivative(v)) + multiply(derivative(m), v));
  };
  double worst = 0.0;
  auto probe = [&](const GridFunction& v) {
    worst = std::max(worst, l2_norm(remainder(v)) / l2_norm(v));
  };
  for (int k = 1; k <= 8; ++k) {
    probe(GridFunction::from_profile(n, [k](double x) { return std::cos(k * x); }));
    probe(GridFunction::from_profile(n, [k](double x) { return std::sin(k * x); }));
  }
  probe(GridFunction::constant(n, 1.0) + random_band_limited(n, 99));
  probe(random_band_limited(n, 101));
  return CocycleClassification{lambda, std::move(m), worst};
}

}  // namespace biham
