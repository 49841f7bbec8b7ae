// Acceptance runner: executes every acceptance criterion at its stated
// tolerance and prints one line per criterion. Exits nonzero if any fails.
//
// Usage: acceptance [path-to-biham-cli]
// The CLI path (argv[1] or $BIHAM_CLI) is needed for the byte-determinism
// criterion, which runs `verify --suite all --seed 42` twice.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "biham/biham.hpp"

namespace {

int g_failures = 0;

void report(int criterion, const std::string& label, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, label.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

using namespace biham;

// 1. Burgers hierarchy oracle, K = 5, relative error <= 1e-9.
void criterion1() {
  const GridFunction m = random_band_limited(256, 42);
  const auto r = generate(InertiaOperator({1.0}), m, {5, 1e-8, 32});
  double worst = 0.0;
  for (int k = 1; k <= 5; ++k) {
    const double oracle = burgers_closed_form(k - 1, m);
    worst = std::max(worst, std::abs(r.levels[k - 1].H_value - oracle) /
                                std::max(1e-30, std::abs(oracle)));
  }
  report(1, "Burgers hierarchy matches closed form, K=5", worst <= 1e-9,
         "max rel err " + num(worst));
}

// 2. CH hierarchy oracle, H1..H3 <= 1e-9.
void criterion2() {
  const GridFunction m = random_band_limited(256, 42);
  const auto r = generate(InertiaOperator({1.0, -1.0}), m, {3, 1e-8, 32});
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k)
    worst = std::max(worst, std::abs(r.levels[k - 1].H_value - ch_explicit(k, m)));
  report(2, "CH hierarchy matches explicit H1..H3", worst <= 1e-9, "max err " + num(worst));
}

// 3. Lenard residuals <= 1e-9 for k <= 4, both systems.
void criterion3() {
  const GridFunction m = random_band_limited(256, 42);
  double worst = 0.0;
  for (const std::vector<double>& coeffs : {std::vector<double>{1.0}, {1.0, -1.0}}) {
    const auto r = generate(InertiaOperator(coeffs), m, {5, 1e-8, 32});
    for (int k = 1; k <= 4; ++k) worst = std::max(worst, lenard_residual(r, k));
  }
  report(3, "Lenard residuals k<=4, Burgers and CH", worst <= 1e-9, "max " + num(worst));
}

// 4. Involution <= 1e-8 at 5 random base points, both structures.
void criterion4() {
  double worst = 0.0;
  for (int point = 0; point < 5; ++point) {
    const GridFunction m = random_band_limited(256, 42 + 10 * static_cast<std::uint64_t>(point));
    for (const std::vector<double>& coeffs : {std::vector<double>{1.0}, {1.0, -1.0}}) {
      const InertiaOperator a(coeffs);
      const auto r = generate(a, m, {4, 1e-8, 32});
      for (const auto& row : involution_matrix(r, LiePoisson{}))
        for (double v : row) worst = std::max(worst, std::abs(v));
      for (const auto& row : involution_matrix(r, CocycleOperator::from_inertia(a)))
        for (double v : row) worst = std::max(worst, std::abs(v));
    }
  }
  report(4, "involution of H_j, H_k (j,k <= 4), both structures", worst <= 1e-8,
         "max bracket " + num(worst));
}

// 5. Conservation under flow + RK4-order drift reduction.
void criterion5() {
  const InertiaOperator ch({1.0, -1.0});
  const GridFunction u0 =
      GridFunction::from_profile(256, [](double x) { return 0.2 * std::cos(x); });
  const FlowState initial{0.0, ch.apply(u0), ch};

  EvolveOptions opt;
  opt.dt = 1e-3;
  opt.steps = 1000;
  opt.hierarchy_depth = 3;
  opt.record_interval = 50;
  const auto run = evolve(initial, opt);
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k) worst = std::max(worst, run.series.max_drift(k));
  report(5, "CH drift of H1..H3 over T=1 at dt=1e-3", worst <= 1e-6, "max drift " + num(worst));

  EvolveOptions half = opt;
  half.dt = 5e-4;
  half.steps = 2000;
  half.record_interval = 100;
  const auto run2 = evolve(initial, half);
  const double d1 = run.series.max_drift(2);
  const double d2 = run2.series.max_drift(2);
  const double ratio = d1 / std::max(d2, 1e-300);
  report(5, "halving dt cuts the H2 drift by 12x..20x", ratio >= 12.0 && ratio <= 20.0,
         "drift " + num(d1) + " -> " + num(d2) + ", ratio " + num(ratio));
}

// 6. Classification, positive direction.
void criterion6() {
  const GridFunction m = random_band_limited(256, 42);
  double sym = 0.0, mode = 0.0;
  for (double a : {-2.0, -1.0, 1.0, 2.0})
    for (double b : {-2.0, -1.0, 1.0, 2.0}) {
      const InertiaOperator op({a, b});
      if (op.first_singular_mode(256)) continue;
      sym = std::max(sym, symmetry_probe(op, CocycleOperator::from_inertia(op), m, 8, 42));
      for (int n = 1; n <= 4; ++n)
        mode = std::max(mode, mode_equality_residual(op, a, b, n));
    }
  report(6, "positive lattice: symmetry probe <= 1e-9, mode equality <= 1e-10",
         sym <= 1e-9 && mode <= 1e-10, "sym " + num(sym) + ", mode " + num(mode));
}

// 7. Classification, negative direction: A = I + D^4 on a 9x9 grid.
void criterion7() {
  const InertiaOperator quartic({1.0, 0.0, 1.0});
  const GridFunction m = random_band_limited(256, 42);
  bool all_excluded = true;
  double min_mode = 1e300, min_sym = 1e300;
  for (int i = 0; i <= 8; ++i)
    for (int j = 0; j <= 8; ++j) {
      const double alpha = -2.0 + 0.5 * i;
      const double beta = -2.0 + 0.5 * j;
      if (alpha == 0.0 && beta == 0.0) continue;
      double worst_mode = 0.0;
      for (int n = 1; n <= 4; ++n)
        worst_mode = std::max(worst_mode, mode_equality_residual(quartic, alpha, beta, n));
      const double sym = symmetry_probe(quartic, CocycleOperator(alpha / 2.0, beta), m, 8, 42);
      min_mode = std::min(min_mode, worst_mode);
      min_sym = std::min(min_sym, sym);
      all_excluded = all_excluded && worst_mode >= 1.0 && sym >= 1e-3;
    }
  report(7, "quartic operator excluded for every (alpha, beta) != 0", all_excluded,
         "min mode " + num(min_mode) + ", min sym " + num(min_sym));
}

// 8. Cohomology battery.
void criterion8() {
  double dd = 0.0;
  for (int i = 0; i < 5; ++i)
    dd = std::max(dd, cocycle_residual_2(coboundary_1(random_band_limited(256, 42 + i))));
  bool pass = dd <= 1e-9;
  std::string detail = "del^2 " + num(dd);

  double cert = 0.0;
  for (int i = 0; i < 20; ++i) {
    GridFunction u = random_band_limited(256, 100 + i);
    u += 0.2 * static_cast<double>(i % 5 - 2);
    cert = std::max(cert, decompose_commutators(u).residual);
  }
  pass = pass && cert <= 1e-10;
  detail += ", certificate " + num(cert);

  double rt = 0.0, inv = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double lambda = -3.0 + 0.33 * i;
    GridFunction m0 = random_band_limited(256, 200 + 2 * i, 6);
    m0 += 0.1 * static_cast<double>(i % 3 - 1);
    const TwoCochain gamma({derivative(m0), 2.0 * m0, 0.0, lambda}, 256);
    const auto cls = classify_cocycle(gamma);
    rt = std::max({rt, std::abs(cls.lambda - lambda), max_abs_diff(cls.m, m0), cls.residual});
    const GridFunction m1 = random_band_limited(256, 200 + 2 * i + 1, 6);
    const TwoCochain shifted(
        {derivative(m0 + m1), 2.0 * (m0 + m1), 0.0, lambda}, 256);
    inv = std::max(inv, std::abs(classify_cocycle(shifted).lambda - cls.lambda));
  }
  pass = pass && rt <= 1e-8 && inv <= 1e-8;
  detail += ", round trip " + num(rt) + ", lambda invariance " + num(inv);
  report(8, "cohomology: del^2 = 0, commutator certificates, classification", pass, detail);
}

// 9. Gradient consistency on CH, k <= 4.
void criterion9() {
  const GridFunction m = random_band_limited(256, 42);
  const InertiaOperator ch({1.0, -1.0});
  const auto r = generate(ch, m, {4, 1e-8, 32});
  const auto fd = biham::detail::fd_hierarchy_gradients(ch, m, 4);
  double fd_worst = 0.0, sym_worst = 0.0;
  for (int k = 1; k <= 4; ++k) {
    fd_worst = std::max(fd_worst, max_abs_diff(fd[k - 1], r.levels[k - 1].G) /
                                      std::max(1.0, max_abs(r.levels[k - 1].G)));
    auto field = [&ch, k](const GridFunction& mm) {
      return biham::detail::build_tower(ch, mm, k, 1e-6).gradient(k);
    };
    sym_worst = std::max(sym_worst, gradient_symmetry_residual(field, m, {1e-5, 6, 42}));
  }
  report(9, "fd_gradient of H_k matches G_k and G_k fields are gradients (CH, k<=4)",
         fd_worst <= 1e-5 && sym_worst <= 1e-5,
         "fd " + num(fd_worst) + ", symmetry " + num(sym_worst));
}

// 10. Byte-identical verify reports across two CLI runs.
void criterion10(const std::string& cli) {
  if (cli.empty()) {
    report(10, "determinism of `verify --suite all --seed 42`", false,
           "no CLI path provided (argv[1] or $BIHAM_CLI)");
    return;
  }
  const std::string out1 = "acceptance_verify_run1.json";
  const std::string out2 = "acceptance_verify_run2.json";
  const std::string cmd1 = cli + " verify --suite all --seed 42 --out " + out1;
  const std::string cmd2 = cli + " verify --suite all --seed 42 --out " + out2;
  const int rc1 = std::system(cmd1.c_str());
  const int rc2 = std::system(cmd2.c_str());
  const std::string a = read_file(out1);
  const std::string b = read_file(out2);
  const bool pass = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
  report(10, "determinism of `verify --suite all --seed 42`", pass,
         "exit " + std::to_string(rc1) + "/" + std::to_string(rc2) + ", " +
             std::to_string(a.size()) + " bytes" + (a == b ? ", identical" : ", DIFFER"));
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  if (argc > 1) cli = argv[1];
  if (cli.empty())
    if (const char* env = std::getenv("BIHAM_CLI")) cli = env;

  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10(cli);

  if (g_failures == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d acceptance criterion(s) FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
