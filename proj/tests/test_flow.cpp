#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "biham/flow.hpp"
#include "biham/serialization.hpp"

using namespace biham;
using Catch::Approx;

namespace {
FlowState make_state(const InertiaOperator& a, const GridFunction& m) { return {0.0, m, a}; }
}  // namespace

TEST_CASE("rhs") {
  const std::size_t n = 128;
  SECTION("constant u is a steady state") {
    const InertiaOperator a({2.0, -1.0});
    const GridFunction m = a.apply(GridFunction::constant(n, 0.7));
    CHECK(max_abs(rhs(make_state(a, m))) <= 1e-13);
  }
  SECTION("A = I reduces to 3 m m_x") {
    const InertiaOperator id({1.0});
    const GridFunction m = random_band_limited(n, 3);
    const GridFunction expect = 3.0 * multiply(m, derivative(m));
    CHECK(max_abs_diff(rhs(make_state(id, m)), expect) <= 1e-12);
  }
  SECTION("CH with u = cos against the trig expansion") {
    const InertiaOperator ch({1.0, -1.0});
    const GridFunction u = GridFunction::from_profile(n, [](double x) { return std::cos(x); });
    const GridFunction m = ch.apply(u);  // 2 cos
    // 2 m u_x + m_x u = -4 cos sin - 2 sin cos = -3 sin 2x
    const GridFunction expect =
        GridFunction::from_profile(n, [](double x) { return -3.0 * std::sin(2 * x); });
    CHECK(max_abs_diff(rhs(make_state(ch, m)), expect) <= 1e-12);
  }
  SECTION("singular symbol propagates") {
    CHECK_THROWS_AS(rhs(make_state(InertiaOperator({1.0, 1.0}), GridFunction(n))), SingularSymbol);
  }
}

TEST_CASE("step_rk4") {
  const std::size_t n = 128;
  const InertiaOperator ch({1.0, -1.0});
  SECTION("steady state is unchanged") {
    const GridFunction m = ch.apply(GridFunction::constant(n, 0.5));
    const FlowState next = step_rk4(make_state(ch, m), 1e-2);
    CHECK(max_abs_diff(next.m, m) <= 1e-14);
    CHECK(next.t == Approx(1e-2));
  }
  SECTION("local error scales as dt^5: full step vs two half steps") {
    const GridFunction m = random_band_limited(n, 4);
    auto local_diff = [&](double dt) {
      const FlowState full = step_rk4(make_state(ch, m), dt);
      const FlowState half = step_rk4(step_rk4(make_state(ch, m), dt / 2), dt / 2);
      return max_abs_diff(full.m, half.m);
    };
    const double d1 = local_diff(0.04);
    const double d2 = local_diff(0.02);
    CHECK(d1 / d2 == Approx(32.0).epsilon(0.2));
  }
  SECTION("global error order against a fine reference") {
    const GridFunction m = random_band_limited(n, 5);
    const double T = 0.2;
    auto run = [&](double dt) {
      FlowState s = make_state(ch, m);
      const int steps = static_cast<int>(std::lround(T / dt));
      for (int i = 0; i < steps; ++i) s = step_rk4(s, dt);
      return s.m;
    };
    const GridFunction ref = run(T / 512);
    const double e1 = max_abs_diff(run(T / 16), ref);
    const double e2 = max_abs_diff(run(T / 32), ref);
    CHECK(e1 / e2 == Approx(16.0).epsilon(0.2));
  }
  SECTION("rejects non-positive dt") {
    CHECK_THROWS_AS(step_rk4(make_state(ch, GridFunction(n)), 0.0), InvalidArgument);
  }
  SECTION("blow-up guard") {
    const GridFunction m = 10.0 * random_band_limited(n, 6);
    FlowState s = make_state(InertiaOperator({1.0}), m);
    CHECK_THROWS_AS(
        [&] {
          for (int i = 0; i < 50; ++i) s = step_rk4(s, 1e6);
        }(),
        BlowUp);
  }
}

TEST_CASE("evolve") {
  const std::size_t n = 128;
  const InertiaOperator ch({1.0, -1.0});
  SECTION("zero data: all drifts exactly zero") {
    EvolveOptions opt;
    opt.dt = 1e-2;
    opt.steps = 20;
    opt.hierarchy_depth = 3;
    opt.record_interval = 5;
    const auto out = evolve(make_state(ch, GridFunction(n)), opt);
    CHECK_FALSE(out.blew_up);
    for (int k = 1; k <= 3; ++k) CHECK(out.series.max_drift(k) == 0.0);
  }
  SECTION("CH cosine data conserves H1..H3 over a short run") {
    const GridFunction m =
        ch.apply(GridFunction::from_profile(n, [](double x) { return 0.2 * std::cos(x); }));
    EvolveOptions opt;
    opt.dt = 1e-3;
    opt.steps = 200;
    opt.hierarchy_depth = 3;
    const auto out = evolve(make_state(ch, m), opt);
    for (int k = 1; k <= 3; ++k) CHECK(out.series.max_drift(k) <= 1e-7);
    CHECK(out.final_state.t == Approx(0.2));
    CHECK(out.series.times.size() == 21);
  }
  SECTION("H1 = ∫m is conserved to machine precision independent of dt") {
    const GridFunction m = random_band_limited(n, 8);
    for (double dt : {2e-3, 1e-3}) {
      EvolveOptions opt;
      opt.dt = dt;
      opt.steps = 100;
      opt.hierarchy_depth = 1;
      const auto out = evolve(make_state(ch, m), opt);
      CHECK(out.series.max_drift(1) <= 1e-12);
    }
  }
  SECTION("burgers smooth data short of blow-up") {
    const InertiaOperator id({1.0});
    const GridFunction m =
        GridFunction::from_profile(n, [](double x) { return 0.2 * std::cos(x); });
    EvolveOptions opt;
    opt.dt = 1e-3;
    opt.steps = 500;
    opt.hierarchy_depth = 3;
    const auto out = evolve(make_state(id, m), opt);
    for (int k = 1; k <= 3; ++k) CHECK(out.series.max_drift(k) <= 1e-7);
  }
  SECTION("time reversal through the m -> -m symmetry") {
    // If m(t) solves the flow then -m(T - t) does as well, so forward T,
    // negate, forward T, negate lands back on the initial data up to the
    // accumulated O(dt^4) error.
    const GridFunction m0 =
        ch.apply(GridFunction::from_profile(n, [](double x) { return 0.2 * std::cos(x); }));
    const double dt = 1e-3;
    const int steps = 1000;
    FlowState s = make_state(ch, m0);
    for (int i = 0; i < steps; ++i) s = step_rk4(s, dt);
    FlowState back = make_state(ch, -s.m);
    for (int i = 0; i < steps; ++i) back = step_rk4(back, dt);
    CHECK(max_abs_diff(-back.m, m0) <= 1e-6);
  }
  SECTION("partial series on blow-up") {
    const GridFunction m = 10.0 * random_band_limited(n, 9);
    EvolveOptions opt;
    opt.dt = 1e5;
    opt.steps = 100;
    opt.hierarchy_depth = 1;
    opt.record_interval = 1;
    const auto out = evolve(make_state(InertiaOperator({1.0}), m), opt);
    CHECK(out.blew_up);
    CHECK(out.series.times.size() >= 1);
  }
}

TEST_CASE("drift series CSV layout") {
  const std::size_t n = 64;
  const InertiaOperator ch({1.0, -1.0});
  EvolveOptions opt;
  opt.dt = 1e-2;
  opt.steps = 10;
  opt.hierarchy_depth = 2;
  opt.record_interval = 5;
  const auto out = evolve(make_state(ch, random_band_limited(n, 1)), opt);
  const std::string csv = to_csv(out.series);
  CHECK(csv.rfind("t,H_1,H_2,drift_1,drift_2\n", 0) == 0);
  // header + one row per snapshot (t = 0, 0.05, 0.1)
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
