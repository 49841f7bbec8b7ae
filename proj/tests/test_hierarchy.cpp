#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "biham/hierarchy.hpp"
#include "biham/verify.hpp"

using namespace biham;
using Catch::Approx;

TEST_CASE("burgers_closed_form coefficients") {
  const std::size_t n = 64;
  const GridFunction m = random_band_limited(n, 1);
  // c_0 = 1, c_1 = 1/2, c_2 = 1/2, c_3 = 5/8, c_4 = 7/8
  CHECK(burgers_closed_form(0, m) == Approx(integral(m)).margin(1e-13));
  CHECK(burgers_closed_form(1, m) == Approx(0.5 * l2_inner(m, m)).epsilon(1e-13));
  CHECK(burgers_closed_form(2, m) ==
        Approx(0.5 * integral(multiply(multiply(m, m), m))).margin(1e-13));
  const GridFunction one = GridFunction::constant(n, 1.0);
  CHECK(burgers_closed_form(3, one) == Approx(0.625 * kTwoPi).epsilon(1e-14));
  CHECK(burgers_closed_form(4, one) == Approx(0.875 * kTwoPi).epsilon(1e-14));
  CHECK_THROWS_AS(burgers_closed_form(-1, m), InvalidArgument);
}

TEST_CASE("ch_explicit") {
  const std::size_t n = 128;
  const InertiaOperator a({1.0, -1.0});
  SECTION("constant state: u = 1 gives H1 = 2π") {
    CHECK(ch_explicit(1, GridFunction::constant(n, 1.0)) == Approx(kTwoPi).epsilon(1e-14));
  }
  SECTION("u = cos: H2 = π, H3 = 0 (odd trig moments vanish)") {
    const GridFunction m = a.apply(GridFunction::from_profile(n, [](double x) { return std::cos(x); }));
    CHECK(ch_explicit(2, m) == Approx(std::numbers::pi).epsilon(1e-13));
    CHECK(std::abs(ch_explicit(3, m)) <= 1e-13);
  }
  SECTION("unsupported level") { CHECK_THROWS_AS(ch_explicit(4, GridFunction(n)), UnsupportedLevel); }
}

TEST_CASE("generate: burgers ladder matches the closed form") {
  const GridFunction m = random_band_limited(256, 42);
  const auto r = generate(InertiaOperator({1.0}), m, {5, 1e-8, 32});
  REQUIRE(r.depth() == 5);
  CHECK_FALSE(r.diagnostics.broken_at.has_value());
  for (int k = 1; k <= 5; ++k) {
    const double oracle = burgers_closed_form(k - 1, m);
    CHECK(r.levels[k - 1].H_value ==
          Approx(oracle).epsilon(1e-9).margin(1e-9));
  }
  SECTION("level-2 gradient is m itself") {
    CHECK(max_abs_diff(r.levels[1].G, m) <= 1e-10);
  }
  SECTION("exact level-1 residual identity") {
    CHECK(lenard_residual(r, 1) <= 1e-12);
  }
}

TEST_CASE("generate: camassa-holm ladder matches the explicit hamiltonians") {
  const GridFunction m = random_band_limited(256, 42);
  const InertiaOperator a({1.0, -1.0});
  const auto r = generate(a, m, {3, 1e-8, 32});
  for (int k = 1; k <= 3; ++k)
    CHECK(r.levels[k - 1].H_value == Approx(ch_explicit(k, m)).margin(1e-9));
  SECTION("G2 = u = A^{-1} m") {
    CHECK(max_abs_diff(r.levels[1].G, a.invert(m)) <= 1e-10);
  }
  SECTION("G3 = A^{-1}(m u + q(u)), q(u) = (a u^2 + b u_x^2)/2") {
    const GridFunction u = a.invert(m);
    const GridFunction ux = derivative(u);
    const GridFunction q = 0.5 * (multiply(u, u) - multiply(ux, ux));
    CHECK(max_abs_diff(r.levels[2].G, a.invert(multiply(m, u) + q)) <= 1e-10);
  }
}

TEST_CASE("generate: level-3 gradient formula holds for general (a, b)") {
  const GridFunction m = random_band_limited(256, 7);
  const double ca = 2.0, cb = -1.0;
  const InertiaOperator a({ca, cb});
  const auto r = generate(a, m, {3, 1e-8, 32});
  const GridFunction u = a.invert(m);
  const GridFunction ux = derivative(u);
  const GridFunction q = 0.5 * (ca * multiply(u, u) + cb * multiply(ux, ux));
  CHECK(max_abs_diff(r.levels[2].G, a.invert(multiply(m, u) + q)) <= 1e-10);
  // H3 = 1/2 ∫ (a u^3 - b u u_x^2), the theorem's second Hamiltonian
  const double h3 = 0.5 * (ca * integral(multiply(multiply(u, u), u)) -
                           cb * l2_inner(multiply(u, ux), ux));
  CHECK(r.levels[2].H_value == Approx(h3).margin(1e-12));
}

TEST_CASE("ladder invariants") {
  const GridFunction m = random_band_limited(256, 11);
  const InertiaOperator a({1.0, -1.0});
  const auto r = generate(a, m, {5, 1e-8, 32});

  SECTION("zero-mean lemma: ∫ X_k = 0 along the ladder") {
    for (double xm : r.diagnostics.x_means) CHECK(std::abs(xm) <= 1e-10);
  }
  SECTION("lenard residuals stay at roundoff") {
    for (int k = 1; k <= 4; ++k) CHECK(lenard_residual(r, k) <= 1e-9);
    for (double res : r.diagnostics.lenard_residuals) CHECK(res <= 1e-9);
  }
  SECTION("corrupting a gradient is detected") {
    HierarchyResult bad = r;
    bad.levels[1].G += GridFunction::from_profile(256, [](double x) { return std::cos(x); });
    CHECK(lenard_residual(bad, 1) >= 0.1);
  }
  SECTION("homogeneity: H_k = <G_k, m>/k matches the reconstruction") {
    for (const auto& lev : r.levels)
      CHECK(lev.H_value == Approx(l2_inner(lev.G, m) / lev.k).margin(1e-11));
  }
  SECTION("X stored per level equals P_m G_k") {
    for (const auto& lev : r.levels)
      CHECK(max_abs_diff(lev.X, lie_poisson_apply(m, lev.G)) <= 1e-12);
  }
  SECTION("index checks") {
    CHECK_THROWS_AS(lenard_residual(r, 5), IndexOutOfRange);
    CHECK_THROWS_AS(lenard_residual(r, 0), IndexOutOfRange);
  }
}

TEST_CASE("gradient property and fd consistency, CH ladder") {
  const GridFunction m = random_band_limited(256, 42);
  const InertiaOperator a({1.0, -1.0});
  const auto r = generate(a, m, {4, 1e-8, 32});
  const auto fd = detail::fd_hierarchy_gradients(a, m, 4);
  for (int k = 2; k <= 4; ++k) {
    CHECK(max_abs_diff(fd[k - 1], r.levels[k - 1].G) <= 1e-5 * std::max(1.0, max_abs(r.levels[k - 1].G)));
    auto field = [&a, k](const GridFunction& mm) {
      return detail::build_tower(a, mm, k, 1e-6).gradient(k);
    };
    CHECK(gradient_symmetry_residual(field, m, {1e-5, 4, 77}) <= 1e-5);
  }
}

TEST_CASE("scaling covariance H_k(λ m) = λ^k H_k(m)") {
  const GridFunction m = random_band_limited(256, 13);
  const InertiaOperator id({1.0});
  const auto base = generate(id, m, {5, 1e-8, 32});
  const auto scaled = generate(id, 0.5 * m, {5, 1e-8, 32});
  for (int k = 1; k <= 5; ++k) {
    const double expect = detail::ipow(0.5, k) * base.levels[k - 1].H_value;
    CHECK(scaled.levels[k - 1].H_value == Approx(expect).margin(1e-8));
  }
}

TEST_CASE("involution for both structures") {
  const GridFunction m = random_band_limited(256, 17);
  for (const std::vector<double>& coeffs : {std::vector<double>{1.0}, {1.0, -1.0}}) {
    const InertiaOperator a(coeffs);
    const auto r = generate(a, m, {4, 1e-8, 32});
    for (const auto& structure :
         {PoissonStructure{LiePoisson{}}, PoissonStructure{CocycleOperator::from_inertia(a)}}) {
      const auto mat = involution_matrix(r, structure);
      for (std::size_t j = 0; j < mat.size(); ++j)
        for (std::size_t k = 0; k < mat.size(); ++k) {
          if (j == k) CHECK(mat[j][k] == 0.0);
          CHECK(std::abs(mat[j][k]) <= 1e-9);
        }
    }
  }
}

TEST_CASE("generate error paths") {
  const GridFunction m = random_band_limited(64, 1);
  CHECK_THROWS_AS(generate(InertiaOperator({1.0}), m, {0, 1e-8, 32}), InvalidArgument);
  CHECK_THROWS_AS(generate(InertiaOperator({1.0, 1.0}), m, {2, 1e-8, 32}), SingularSymbol);
}

TEST_CASE("nonzero-mean base points work too") {
  GridFunction m = random_band_limited(256, 19);
  m += 0.4;
  const auto r = generate(InertiaOperator({1.0}), m, {4, 1e-8, 32});
  for (int k = 1; k <= 4; ++k)
    CHECK(r.levels[k - 1].H_value ==
          Approx(burgers_closed_form(k - 1, m)).epsilon(1e-10).margin(1e-10));
}
