#pragma once

// Regular functionals on the dual and their L² gradients: finite-difference
// gradients, reconstruction of a Hamiltonian from a gradient field through
// the line integral F(m) = ∫₀¹ <X(tm), m> dt, the symmetry test that
// certifies a vector field as a gradient, and Poisson brackets of functionals
// for the Lie-Poisson and affine structures.

#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "biham/errors.hpp"
#include "biham/grid_function.hpp"
#include "biham/operators.hpp"

namespace biham {

using ScalarField = std::function<double(const GridFunction&)>;
using VectorField = std::function<GridFunction(const GridFunction&)>;

/// A functional represented behaviorally: evaluation plus (optionally) its
/// L² gradient map δF. When no gradient is attached, consumers fall back to
/// central finite differences.
struct RegularFunctional {
  ScalarField eval;
  VectorField grad;  // may be empty

  bool has_grad() const { return static_cast<bool>(grad); }
};

/// Tag for the canonical Lie-Poisson structure P_m = mD + Dm.
struct LiePoisson {};

/// A Poisson structure is either Lie-Poisson (base-point dependent) or a
/// constant affine structure Q.
using PoissonStructure = std::variant<LiePoisson, CocycleOperator>;

inline GridFunction apply_structure(const PoissonStructure& s, const GridFunction& m,
                                    const GridFunction& f) {
  if (std::holds_alternative<LiePoisson>(s)) return lie_poisson_apply(m, f);
  return std::get<CocycleOperator>(s).apply(f);
}

/// Central-difference Gâteaux gradient: dF(m)[e_j] probed against the N
/// coordinate directions and assembled through the L² pairing (weight 2π/N).
inline GridFunction fd_gradient(const ScalarField& f, const GridFunction& m, double eps = 1e-5) {
  if (!(eps > 0.0)) throw InvalidArgument("fd_gradient requires eps > 0");
  const std::size_t n = m.size();
  const double weight = kTwoPi / static_cast<double>(n);
  std::vector<double> grad(n);
  std::vector<double> probe = m.samples();
  for (std::size_t j = 0; j < n; ++j) {
    const double saved = probe[j];
    probe[j] = saved + eps;
    const double fp = f(GridFunction(probe));
    probe[j] = saved - eps;
    const double fm = f(GridFunction(probe));
    probe[j] = saved;
    grad[j] = (fp - fm) / (2.0 * eps * weight);
  }
  return GridFunction(std::move(grad));
}

namespace detail {

/// Gauss–Legendre nodes/weights on [0, 1] by Newton iteration on P_n.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre_01(int n) {
  std::vector<double> nodes(static_cast<std::size_t>(n)), weights(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Chebyshev-based initial guess for the i-th root of P_n on [-1, 1].
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);  // roots come out descending
    weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return {nodes, weights};
}

}  // namespace detail

/// Recovers F with δF = X and F(0) = 0 via F(m) = ∫₀¹ <X(tm), m> dt,
/// assuming X has symmetric derivative (the caller's responsibility; see
/// gradient_symmetry_residual). Gauss–Legendre in t; the default 32 nodes are
/// exact for the polynomial t-dependence of every hierarchy member.
inline double reconstruct_hamiltonian(const VectorField& x, const GridFunction& m,
                                      int quad_points = 32) {
  if (quad_points < 1) throw InvalidArgument("quad_points must be >= 1");
  auto [nodes, weights] = detail::gauss_legendre_01(quad_points);
  double f = 0.0;
  for (int i = 0; i < quad_points; ++i) {
    GridFunction scaled = nodes[static_cast<std::size_t>(i)] * m;
    f += weights[static_cast<std::size_t>(i)] * l2_inner(x(scaled), m);
  }
  return f;
}

struct SymmetryProbeOptions {
  double eps = 1e-5;
  int pairs = 6;
  std::uint64_t seed = 1234;
};

/// Max over random probe pairs (M, N) of |<X'(m)M, N> - <X'(m)N, M>| with
/// X'(m) by central differences. Near zero certifies that X is a gradient
/// field (symmetric Fréchet derivative).
inline double gradient_symmetry_residual(const VectorField& x, const GridFunction& m,
                                         const SymmetryProbeOptions& opt = {}) {
  const double eps = opt.eps;
  auto directional = [&](const GridFunction& v) {
    GridFunction d = x(m + eps * v) - x(m + (-eps) * v);
    return (0.5 / eps) * d;
  };
  double worst = 0.0;
  for (int p = 0; p < opt.pairs; ++p) {
    GridFunction probe_m = random_band_limited(m.size(), opt.seed + 2 * static_cast<std::uint64_t>(p));
    GridFunction probe_n = random_band_limited(m.size(), opt.seed + 2 * static_cast<std::uint64_t>(p) + 1);
    const double lhs = l2_inner(directional(probe_m), probe_n);
    const double rhs = l2_inner(directional(probe_n), probe_m);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

inline GridFunction gradient_of(const RegularFunctional& f, const GridFunction& m,
                                double fd_eps = 1e-5) {
  return f.has_grad() ? f.grad(m) : fd_gradient(f.eval, m, fd_eps);
}

/// {F, G}(m) = <δF(m), P_m δG(m)> or <δF(m), Q δG(m)>.
inline double poisson_bracket(const RegularFunctional& f, const RegularFunctional& g,
                              const PoissonStructure& s, const GridFunction& m) {
  return l2_inner(gradient_of(f, m), apply_structure(s, m, gradient_of(g, m)));
}

/// X_F(m) = P δF(m) for the chosen structure.
inline GridFunction hamiltonian_vector_field(const RegularFunctional& f,
                                             const PoissonStructure& s, const GridFunction& m) {
  return apply_structure(s, m, gradient_of(f, m));
}

/// Linear functional F_u(m) = ∫ u m dx with δF = u.
inline RegularFunctional linear_functional(const GridFunction& u) {
  return RegularFunctional{
      [u](const GridFunction& m) { return l2_inner(u, m); },
      [u](const GridFunction& m) {
        m.check_same_grid(u);
        return u;
      }};
}

}  // namespace biham
