#pragma once

// Time integration of the Euler equation m_t = 2 m u_x + m_x u, m = A u, by
// classical fixed-step RK4 (method of lines), plus drift accounting for the
// hierarchy invariants H₁ .. H_K along the flow.
//
// No filtering or artificial viscosity: the conservation statements tested
// downstream are exact only for the unmodified semi-discretization. A step
// guard throws BlowUp once samples exceed 1e8, which matters for
// Camassa-Holm data that steepens toward wave breaking.

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "biham/errors.hpp"
#include "biham/grid_function.hpp"
#include "biham/hierarchy.hpp"
#include "biham/operators.hpp"

namespace biham {

struct FlowState {
  double t;
  GridFunction m;
  InertiaOperator A;
};

inline constexpr double kBlowUpGuard = 1e8;

/// X_A(m) = (mD + Dm)(A⁻¹ m) = 2 m u_x + u m_x, de-aliased.
inline GridFunction rhs(const FlowState& state) {
  const GridFunction u = state.A.invert(state.m);
  return 2.0 * multiply(state.m, derivative(u)) + multiply(u, derivative(state.m));
}

namespace detail {

inline void check_finite(const GridFunction& m, double t) {
  for (double s : m.samples())
    if (!std::isfinite(s) || std::abs(s) > kBlowUpGuard) throw BlowUp(t, max_abs(m));
}

}  // namespace detail

/// One classical RK4 step; advances t by dt.
inline FlowState step_rk4(const FlowState& state, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("step_rk4 requires dt > 0");
  const GridFunction& m = state.m;
  const auto f = [&](const GridFunction& y) { return rhs(FlowState{state.t, y, state.A}); };
  const GridFunction k1 = f(m);
  const GridFunction k2 = f(m + (0.5 * dt) * k1);
  const GridFunction k3 = f(m + (0.5 * dt) * k2);
  const GridFunction k4 = f(m + dt * k3);
  GridFunction next = m + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  detail::check_finite(next, state.t + dt);
  return FlowState{state.t + dt, std::move(next), state.A};
}

/// Recorded invariant history along a run. relative_drifts(k, i) =
/// |H_k(t_i) - H_k(t_0)| / max(|H_k(t_0)|, 1e-12).
struct DriftSeries {
  std::vector<double> times;
  std::vector<std::vector<double>> H_values;        // [level][snapshot]
  std::vector<std::vector<double>> relative_drifts;  // same shape

  int depth() const { return static_cast<int>(H_values.size()); }

  double max_drift(int level) const {
    double worst = 0.0;
    for (double d : relative_drifts[static_cast<std::size_t>(level) - 1])
      worst = std::max(worst, d);
    return worst;
  }
};

struct EvolveOptions {
  double dt = 1e-3;
  int steps = 1000;
  int hierarchy_depth = 3;
  int record_interval = 10;  // snapshots every this many steps (plus first/last)
  double tol_mean = 1e-8;
};

struct EvolveOutcome {
  DriftSeries series;
  FlowState final_state;
  bool blew_up = false;
  double blow_up_time = 0.0;
};

/// Advances the state and records H₁..H_K every record_interval steps. On
/// blow-up the partial series is returned with the flag set.
inline EvolveOutcome evolve(const FlowState& initial, const EvolveOptions& opt) {
  if (!(opt.dt > 0.0) || opt.steps < 0) throw InvalidArgument("evolve needs dt > 0, steps >= 0");
  if (opt.hierarchy_depth < 1) throw InvalidArgument("evolve needs hierarchy_depth >= 1");
  if (opt.record_interval < 1) throw InvalidArgument("evolve needs record_interval >= 1");

  const int depth = opt.hierarchy_depth;
  DriftSeries series;
  series.H_values.resize(static_cast<std::size_t>(depth));
  series.relative_drifts.resize(static_cast<std::size_t>(depth));
  std::vector<double> h0(static_cast<std::size_t>(depth), 0.0);

  auto record = [&](const FlowState& s) {
    auto ladder = generate(s.A, s.m, HierarchyOptions{depth, opt.tol_mean, 32});
    series.times.push_back(s.t);
    for (int k = 1; k <= depth; ++k) {
      const double h = k <= ladder.depth() ? ladder.levels[static_cast<std::size_t>(k) - 1].H_value
                                           : std::nan("");
      auto& row = series.H_values[static_cast<std::size_t>(k) - 1];
      row.push_back(h);
      if (series.times.size() == 1) h0[static_cast<std::size_t>(k) - 1] = h;
      const double base = std::max(std::abs(h0[static_cast<std::size_t>(k) - 1]), 1e-12);
      series.relative_drifts[static_cast<std::size_t>(k) - 1].push_back(
          std::abs(h - h0[static_cast<std::size_t>(k) - 1]) / base);
    }
  };

  FlowState state = initial;
  record(state);
  bool blew_up = false;
  double blow_up_time = 0.0;
  for (int step = 1; step <= opt.steps; ++step) {
    try {
      state = step_rk4(state, opt.dt);
    } catch (const BlowUp& b) {
      blew_up = true;
      blow_up_time = b.t();
      break;
    }
    if (step % opt.record_interval == 0 || step == opt.steps) record(state);
  }
  return EvolveOutcome{std::move(series), std::move(state), blew_up, blow_up_time};
}

}  // namespace biham
