#pragma once

// The Lenard ladder for the Euler equation on the dual of Vect(S¹):
// G₁ = 1, P_m G_k = Q G_{k+1} with P_m = mD + Dm and Q = DA, generating
// Hamiltonians H₁, H₂, ... that are pairwise in involution for both
// structures.
//
// Q⁻¹ = A⁻¹D⁻¹ is defined only up to the kernel of Q (constant functions),
// and the choice matters: picking the plain zero-mean primitive at each rung
// makes later G_k fail to be gradients and drifts the H_k off the Burgers
// closed form from level 4 on. The rung constants are pinned here without
// finite differences by carrying, for every level, the Taylor expansion of
// G_k(m + ε·1) in the constant direction:
//
//   G_k(m + ε) = Σ_j ε^j G_k^{(j)}(m),      D A G_{k+1}^{(j)} = P_m G_k^{(j)} + 2 D G_k^{(j-1)}.
//
// Because the G_k are gradients of homogeneous H_k, the column means close
// the recursion top-down: writing H_{k+1}(m + ε) = Σ_j ε^j h_j(m), Euler's
// identity gives <G_{k+1}^{(j+1)}, m> = (k - j) h_{j+1} while the ε-expansion
// of dH/dε gives 2π mean(G_{k+1}^{(j)}) = (j + 1) h_{j+1}, so each column's
// mean follows from the one above it:
//
//   mean(A G_{k+1}^{(j)}) = a₀ (j + 1) <G_{k+1}^{(j+1)}, m> / (2π (k - j)).
//
// The top column j = k is seeded by the constant-argument values
// G_{k+1}(ε·1) = d_{k+1} (ε/a₀)^k with d₁ = 1, d_{k+1} = d_k (2k-1)/k —
// the same coefficients as the Burgers closed form c_k = d_{k+1}/(k+1).

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "biham/errors.hpp"
#include "biham/functionals.hpp"
#include "biham/grid_function.hpp"
#include "biham/operators.hpp"

namespace biham {

/// One rung of the ladder: index, Hamiltonian value at the base point, the
/// gradient G_k = δH_k there, and the Hamiltonian vector field X_k = P_m G_k.
struct HierarchyLevel {
  int k;
  double H_value;
  GridFunction G;
  GridFunction X;
};

struct HierarchyDiagnostics {
  std::vector<double> x_means;           // ∫ X_k dx / 2π per level
  std::vector<double> lenard_residuals;  // ||P_m G_k - Q G_{k+1}|| / ||P_m G_k||
  std::optional<int> broken_at;          // level whose X left the image of D
};

struct HierarchyResult {
  std::vector<HierarchyLevel> levels;  // contiguous from k = 1
  GridFunction m;
  InertiaOperator A;
  HierarchyDiagnostics diagnostics;

  int depth() const { return static_cast<int>(levels.size()); }
};

struct HierarchyOptions {
  int depth = 5;
  double tol_mean = 1e-8;  // LadderBreak threshold on mean(X_k)
  int quad_points = 32;    // Gauss-Legendre nodes for H_k reconstruction
};

namespace detail {

inline double ipow(double base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Burgers gradient coefficients d_k (G_k = d_k m^{k-1} for A = I).
inline std::vector<double> burgers_d(int depth) {
  std::vector<double> d(static_cast<std::size_t>(depth) + 1, 0.0);
  d[1] = 1.0;
  for (int k = 1; k < depth; ++k)
    d[static_cast<std::size_t>(k) + 1] = d[static_cast<std::size_t>(k)] * (2.0 * k - 1.0) / k;
  return d;
}

/// Gradient columns of one build point: tower[k-1][j] = G_k^{(j)}(m).
struct LadderTower {
  std::vector<std::vector<GridFunction>> columns;
  std::vector<GridFunction> x_fields;  // X_k = P_m G_k for built levels
  std::vector<double> x_means;
  std::optional<int> broken_at;

  int built_depth() const { return static_cast<int>(columns.size()); }
  const GridFunction& gradient(int k) const { return columns[static_cast<std::size_t>(k) - 1][0]; }
};

inline LadderTower build_tower(const InertiaOperator& a, const GridFunction& m, int depth,
                               double tol_mean) {
  if (auto bad = a.first_singular_mode(m.size())) throw SingularSymbol(*bad);
  const double a0 = a.symbol(0);
  const auto d = burgers_d(depth);
  const GridFunction m_x = derivative(m);

  auto p_apply = [&](const GridFunction& g) {
    return 2.0 * multiply(m, derivative(g)) + multiply(m_x, g);
  };

  LadderTower tower;
  tower.columns.push_back({GridFunction::constant(m.size(), 1.0)});

  for (int lev = 1; lev < depth; ++lev) {
    const auto& cur = tower.columns.back();  // columns of G_lev, j = 0..lev-1
    std::vector<GridFunction> next(static_cast<std::size_t>(lev) + 1, GridFunction(m.size()));
    bool broke = false;
    for (int j = lev; j >= 0; --j) {
      GridFunction rhs(m.size());
      if (j <= lev - 1) rhs += p_apply(cur[static_cast<std::size_t>(j)]);
      if (j >= 1) rhs += 2.0 * derivative(cur[static_cast<std::size_t>(j) - 1]);
      const double rhs_mean = mean(rhs);
      if (j == 0) {
        tower.x_fields.push_back(rhs);
        tower.x_means.push_back(rhs_mean);
      }
      if (std::abs(rhs_mean) > tol_mean) {
        tower.broken_at = lev;
        broke = true;
        break;
      }
      GridFunction w = antiderivative_zero_mean(rhs, tol_mean);
      double w_mean;
      if (j == lev) {
        w_mean = d[static_cast<std::size_t>(lev) + 1] / ipow(a0, lev - 1);
      } else {
        const double h_next = l2_inner(next[static_cast<std::size_t>(j) + 1], m) / (lev - j);
        w_mean = a0 * (j + 1) * h_next / kTwoPi;
      }
      w += w_mean;
      next[static_cast<std::size_t>(j)] = a.invert(w);
    }
    if (broke) break;
    tower.columns.push_back(std::move(next));
  }

  // X at the deepest built level, for diagnostics and the level record
  // (missing when the loop ended or broke before reaching column j = 0).
  if (tower.x_fields.size() < tower.columns.size()) {
    const GridFunction& g_top = tower.columns.back()[0];
    GridFunction x_top = p_apply(g_top);
    tower.x_means.push_back(mean(x_top));
    tower.x_fields.push_back(std::move(x_top));
    if (!tower.broken_at && std::abs(tower.x_means.back()) > tol_mean)
      tower.broken_at = tower.built_depth();
  }
  return tower;
}

}  // namespace detail

/// Q G = D A G, valid for any constant-coefficient A.
inline GridFunction q_apply(const InertiaOperator& a, const GridFunction& g) {
  return derivative(a.apply(g));
}

/// Generates the ladder to the requested depth. H_k values are produced by
/// the line-integral reconstruction from the gradient field m ↦ G_k(m); the
/// ladder is re-run at each quadrature node t·m.
inline HierarchyResult generate(const InertiaOperator& a, const GridFunction& m,
                                const HierarchyOptions& opt = {}) {
  if (opt.depth < 1) throw InvalidArgument("hierarchy depth must be >= 1");
  auto tower = detail::build_tower(a, m, opt.depth, opt.tol_mean);
  const int built = tower.built_depth();

  // Gradient evaluations at the quadrature nodes; each node reuses one tower
  // for every level.
  auto [nodes, weights] = detail::gauss_legendre_01(opt.quad_points);
  std::vector<double> h(static_cast<std::size_t>(built) + 1, 0.0);
  for (int i = 0; i < opt.quad_points; ++i) {
    auto scaled = detail::build_tower(a, nodes[static_cast<std::size_t>(i)] * m, built,
                                      opt.tol_mean);
    const int reach = std::min(built, scaled.built_depth());
    for (int k = 1; k <= reach; ++k)
      h[static_cast<std::size_t>(k)] +=
          weights[static_cast<std::size_t>(i)] * l2_inner(scaled.gradient(k), m);
  }

  HierarchyResult result{{}, m, a, {}};
  for (int k = 1; k <= built; ++k) {
    result.levels.push_back(HierarchyLevel{k, h[static_cast<std::size_t>(k)], tower.gradient(k),
                                           tower.x_fields[static_cast<std::size_t>(k) - 1]});
  }
  result.diagnostics.x_means = tower.x_means;
  result.diagnostics.broken_at = tower.broken_at;
  for (int k = 1; k < built; ++k) {
    const GridFunction& x = result.levels[static_cast<std::size_t>(k) - 1].X;
    const GridFunction qg = q_apply(a, result.levels[static_cast<std::size_t>(k)].G);
    result.diagnostics.lenard_residuals.push_back(l2_norm(x - qg) / l2_norm(x));
  }
  return result;
}

/// ||P_m G_k - Q G_{k+1}|| / ||P_m G_k|| recomputed from a result.
inline double lenard_residual(const HierarchyResult& r, int k) {
  if (k < 1 || k + 1 > r.depth())
    throw IndexOutOfRange("lenard_residual needs 1 <= k and k+1 <= depth");
  const GridFunction x = lie_poisson_apply(r.m, r.levels[static_cast<std::size_t>(k) - 1].G);
  const GridFunction qg = q_apply(r.A, r.levels[static_cast<std::size_t>(k)].G);
  return l2_norm(x - qg) / l2_norm(x);
}

/// Matrix of brackets {H_j, H_k} at the base point, computed from the stored
/// gradients with the chosen structure. Near-zero certifies involution.
inline std::vector<std::vector<double>> involution_matrix(const HierarchyResult& r,
                                                          const PoissonStructure& s) {
  const int n = r.depth();
  std::vector<std::vector<double>> mat(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;  // diagonal is exactly zero by skewness
      mat[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
          l2_inner(r.levels[static_cast<std::size_t>(j)].G,
                   apply_structure(s, r.m, r.levels[static_cast<std::size_t>(k)].G));
    }
  return mat;
}

/// Burgers closed form H_{k+1}(m) = c_k ∫ m^{k+1} dx with
/// c_k = (2k)! / (2^k (k!)² (k+1)).
inline double burgers_closed_form(int k, const GridFunction& m) {
  if (k < 0) throw InvalidArgument("burgers_closed_form needs k >= 0");
  // c_k = C(2k, k) / (2^k (k+1)); exact in double for desk-scale k.
  double binom = 1.0;
  for (int i = 1; i <= k; ++i) binom *= static_cast<double>(k + i) / i;
  const double c = binom / (detail::ipow(2.0, k) * (k + 1));
  GridFunction p = m;
  for (int i = 0; i < k; ++i) p = multiply(p, m);
  return c * integral(p);
}

/// The three explicit Camassa-Holm Hamiltonians (A = I - D² fixed):
/// H₁ = ∫u, H₂ = ½∫(u² + u_x²), H₃ = ½∫u(u² + u_x²).
inline double ch_explicit(int k, const GridFunction& m) {
  const InertiaOperator a({1.0, -1.0});
  const GridFunction u = a.invert(m);
  switch (k) {
    case 1:
      return integral(u);
    case 2: {
      const GridFunction ux = derivative(u);
      return 0.5 * (l2_inner(u, u) + l2_inner(ux, ux));
    }
    case 3: {
      const GridFunction ux = derivative(u);
      return 0.5 * (integral(multiply(multiply(u, u), u)) + l2_inner(multiply(u, ux), ux));
    }
    default:
      throw UnsupportedLevel(k);
  }
}

}  // namespace biham
