#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "biham/classification.hpp"

using namespace biham;
using Catch::Approx;

TEST_CASE("mode_equality_residual") {
  SECTION("CH pair: A = I - D^2 with (alpha, beta) = (1, -1) closes for all n") {
    const InertiaOperator a({1.0, -1.0});
    for (int n = 1; n <= 6; ++n) CHECK(mode_equality_residual(a, 1.0, -1.0, n) == 0.0);
  }
  SECTION("A = I with beta = 0 closes for any alpha") {
    const InertiaOperator id({1.0});
    for (double alpha : {-3.0, 0.5, 2.0})
      for (int n = 1; n <= 4; ++n) CHECK(mode_equality_residual(id, alpha, 0.0, n) == 0.0);
  }
  SECTION("A = I, beta = 1, alpha = 0, n = 1 gives |24 - 6| = 18") {
    CHECK(mode_equality_residual(InertiaOperator({1.0}), 0.0, 1.0, 1) == Approx(18.0));
  }
  SECTION("proportional pairs close for general order-2 operators") {
    const InertiaOperator a({2.0, 1.0});
    for (double lam : {1.0, -0.5, 3.0})
      for (int n = 1; n <= 4; ++n)
        CHECK(std::abs(mode_equality_residual(a, 2.0 * lam, 1.0 * lam, n)) <= 1e-10);
  }
  SECTION("errors") {
    CHECK_THROWS_AS(mode_equality_residual(InertiaOperator({1.0}), 1.0, 1.0, 0), InvalidArgument);
    // s_A(2) = 0 for A = 4I + D^2
    CHECK_THROWS_AS(mode_equality_residual(InertiaOperator({4.0, 1.0}), 1.0, 1.0, 1),
                    SingularSymbol);
  }
}

TEST_CASE("symmetry_probe") {
  const std::size_t n = 256;
  const GridFunction m = random_band_limited(n, 42);
  SECTION("positive: CH pair") {
    const InertiaOperator a({1.0, -1.0});
    CHECK(symmetry_probe(a, CocycleOperator::from_inertia(a), m) <= 1e-9);
  }
  SECTION("positive: burgers pair") {
    const InertiaOperator id({1.0});
    CHECK(symmetry_probe(id, CocycleOperator(0.5, 0.0), m) <= 1e-9);
  }
  SECTION("negative: quartic operator fails for generic (alpha, beta)") {
    const InertiaOperator quartic({1.0, 0.0, 1.0});
    CHECK(symmetry_probe(quartic, CocycleOperator(0.5, 1.0), m) >= 1e-3);
    CHECK(symmetry_probe(quartic, CocycleOperator(0.5, 0.0), m) >= 1e-3);
  }
  SECTION("non-constant m0 is rejected by the probe at m = 1") {
    const InertiaOperator a({1.0, -1.0});
    const GridFunction one = GridFunction::constant(n, 1.0);
    const CocycleOperator q_var(
        GridFunction::from_profile(n, [](double x) { return 0.5 + 0.3 * std::cos(x); }), -1.0);
    CHECK(symmetry_probe(a, q_var, one) >= 1e-3);
  }
  SECTION("singular operator is rejected") {
    CHECK_THROWS_AS(symmetry_probe(InertiaOperator({1.0, 1.0}), CocycleOperator(0.5, 0.0), m),
                    SingularSymbol);
  }
}

TEST_CASE("euler field derivative closed form matches finite differences") {
  const std::size_t n = 256;
  const InertiaOperator a({1.0, -1.0});
  const GridFunction m = random_band_limited(n, 5);
  const GridFunction v = random_band_limited(n, 6);
  auto x_a = [&](const GridFunction& mm) {
    const GridFunction u = a.invert(mm);
    return 2.0 * multiply(mm, derivative(u)) + multiply(u, derivative(mm));
  };
  const double eps = 1e-6;
  const GridFunction fd = (0.5 / eps) * (x_a(m + eps * v) - x_a(m + (-eps) * v));
  CHECK(max_abs_diff(euler_field_derivative(a, m, v), fd) <= 1e-7);
}

TEST_CASE("scan_admissible") {
  ScanOptions opt;
  opt.max_order = 4;
  opt.grid_n = 128;
  const auto report = scan_admissible(opt);

  int passes = 0, singular = 0, degenerate = 0;
  for (const auto& e : report.entries) {
    if (e.singular) {
      ++singular;
      continue;
    }
    if (e.degenerate) {
      ++degenerate;
      CHECK_FALSE(e.passed);
      continue;
    }
    const double a = e.even_coeffs[0];
    const double b = e.even_coeffs.size() > 1 ? e.even_coeffs[1] : 0.0;
    const bool proportional = e.alpha * b - e.beta * a == 0.0;
    const bool expected = e.even_coeffs.size() <= 2 && proportional;
    INFO("coeffs size " << e.even_coeffs.size() << " alpha " << e.alpha << " beta " << e.beta);
    CHECK(e.passed == expected);
    if (e.passed) ++passes;
  }
  CHECK(passes > 0);
  CHECK(singular > 0);    // the equal-coefficient lattice points and I - D^4
  CHECK(degenerate > 0);  // (0, 0) is flagged, never counted as a pass
}
