// biham — batch front end for the spectral bi-Hamiltonian toolkit.
//
//   biham simulate   — integrate the Euler flow and track invariant drift
//   biham hierarchy  — generate the Lenard ladder and compare oracles
//   biham verify     — run the property suites and emit a JSON report
//
// Exit codes: 0 success, 1 failed verification assertions, 2 configuration
// errors, 3 blow-up / ladder break (partial output is still written).
//
// Option precedence: command line > config file (plain key=value lines,
// path from --config or $BIHAM_CONFIG) > built-in defaults.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "biham/biham.hpp"

namespace {

struct CommonOptions {
  double a = 1.0;
  double b = 0.0;
  std::vector<double> coeffs;  // overrides (a, b) when present
  std::size_t n = 256;
  std::uint64_t seed = 42;
  std::string init = "cosine:0.2";
  std::string out;
};

biham::InertiaOperator make_inertia(const CommonOptions& c) {
  if (!c.coeffs.empty()) return biham::InertiaOperator(c.coeffs);
  return biham::InertiaOperator({c.a, c.b});
}

biham::GridFunction make_initial(const CommonOptions& c) {
  const std::string& spec = c.init;
  if (spec == "zero") return biham::GridFunction(c.n);
  if (spec.rfind("cosine:", 0) == 0) {
    const double amp = std::stod(spec.substr(7));
    return biham::GridFunction::from_profile(c.n, [amp](double x) { return amp * std::cos(x); });
  }
  if (spec.rfind("random:", 0) == 0) {
    const auto seed = static_cast<std::uint64_t>(std::stoull(spec.substr(7)));
    return biham::random_band_limited(c.n, seed);
  }
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw biham::InvalidArgument("cannot open initial data file: " + path);
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
      nlohmann::json j;
      in >> j;
      return biham::grid_function_from_json(j);
    }
    return biham::grid_function_from_csv(in);
  }
  throw biham::InvalidArgument("unknown --init spec: " + spec +
                               " (expected zero|cosine:amp|random:seed|file:path)");
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content << "\n";
  else
    biham::write_file(out_path, content);
}

// Plain key=value overlay applied to options the command line left untouched.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::map<std::string, std::string> kv;
  std::ifstream in(path);
  if (!in) throw biham::InvalidArgument("cannot open config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = value;
  }
  return kv;
}

void apply_config(CLI::App* cmd, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr || opt->count() > 0) continue;  // CLI wins
    opt->add_result(value);
    opt->run_callback();
  }
}

int run_simulate(const CommonOptions& common, double dt, int steps, int depth, double tol,
                 int record_interval) {
  const auto a = make_inertia(common);
  if (auto bad = a.first_singular_mode(common.n)) {
    std::cerr << "error: inertia symbol vanishes at wavenumber n = " << *bad << "\n";
    return 2;
  }
  const auto start = std::chrono::steady_clock::now();
  biham::FlowState state{0.0, make_initial(common), a};
  biham::EvolveOptions opt;
  opt.dt = dt;
  opt.steps = steps;
  opt.hierarchy_depth = depth;
  opt.record_interval = record_interval;
  opt.tol_mean = tol;
  const auto outcome = biham::evolve(state, opt);
  const double runtime =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string csv = biham::to_csv(outcome.series);
  if (common.out.empty())
    std::cout << csv;
  else
    biham::write_file(common.out, csv);

  biham::JsonWriter w;
  w.begin_object();
  w.field("steps", steps);
  w.field("dt", dt);
  w.field("depth", depth);
  w.field("blow_up", outcome.blew_up);
  if (outcome.blew_up) w.field("blow_up_time", outcome.blow_up_time);
  w.key("max_drifts").begin_array();
  for (int k = 1; k <= outcome.series.depth(); ++k) w.value(outcome.series.max_drift(k));
  w.end_array();
  w.field("runtime_seconds", runtime);
  w.end_object();
  std::cerr << w.str() << "\n";
  return outcome.blew_up ? 3 : 0;
}

int run_hierarchy(const CommonOptions& common, int depth, double tol, bool gradients) {
  if (depth < 1) {
    std::cerr << "error: --depth must be >= 1\n";
    return 2;
  }
  const auto a = make_inertia(common);
  if (auto bad = a.first_singular_mode(common.n)) {
    std::cerr << "error: inertia symbol vanishes at wavenumber n = " << *bad << "\n";
    return 2;
  }
  const biham::GridFunction m = make_initial(common);
  const auto result = biham::generate(a, m, {depth, tol, 32});

  // Closed-form cross-checks where the operator is one of the named systems.
  std::optional<bool> oracle_match;
  double oracle_err = 0.0;
  const auto& c = a.even_coeffs();
  const bool is_burgers = c.size() == 1 || (c.size() == 2 && c[1] == 0.0);
  const bool is_ch = c.size() == 2 && c[0] == 1.0 && c[1] == -1.0;
  if (is_burgers && c[0] == 1.0) {
    for (const auto& lev : result.levels) {
      const double ref = biham::burgers_closed_form(lev.k - 1, m);
      oracle_err = std::max(oracle_err,
                            std::abs(lev.H_value - ref) / std::max(1.0, std::abs(ref)));
    }
    oracle_match = oracle_err <= 1e-9;
  } else if (is_ch) {
    for (const auto& lev : result.levels) {
      if (lev.k > 3) break;
      oracle_err = std::max(oracle_err, std::abs(lev.H_value - biham::ch_explicit(lev.k, m)));
    }
    oracle_match = oracle_err <= 1e-9;
  }

  std::string json = biham::hierarchy_report_json(result, gradients);
  if (oracle_match) {
    // splice the oracle fields before the closing brace
    biham::JsonWriter w;
    w.field("oracle_match", *oracle_match);
    w.field("oracle_max_err", oracle_err);
    json.insert(json.size() - 1, "," + w.str());
  }
  emit(common.out, json);
  return result.diagnostics.broken_at ? 3 : 0;
}

int run_verify(const CommonOptions& common, const std::string& suite) {
  std::vector<biham::VerificationReport> reports;
  try {
    reports = biham::run_suites(suite, {common.seed, common.n});
  } catch (const biham::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  emit(common.out, biham::reports_to_json(reports));
  for (const auto& r : reports)
    if (!r.passed()) {
      for (const auto& c : r.checks)
        if (!c.pass)
          std::cerr << "failed: " << c.name << " residual=" << biham::JsonWriter::number(c.residual)
                    << " tol=" << biham::JsonWriter::number(c.tol) << "\n";
      return 1;
    }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euler flows, Lenard hierarchies and affine Poisson structures on Vect*(S¹)"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string config_path;
  if (const char* env = std::getenv("BIHAM_CONFIG")) config_path = env;

  double dt = 1e-3, tol = 1e-8;
  int steps = 1000, depth = 3, record_interval = 10;
  bool gradients = false;
  std::string suite = "all";

  auto add_common = [&](CLI::App* cmd, bool wants_operator) {
    cmd->add_option("--config", config_path, "plain key=value config file");
    cmd->add_option("--n", common.n, "grid size (power of two >= 16)");
    cmd->add_option("--seed", common.seed, "seed for random data and probes");
    cmd->add_option("--out", common.out, "output path (default: stdout)");
    if (wants_operator) {
      cmd->add_option("--a", common.a, "inertia coefficient of I");
      cmd->add_option("--b", common.b, "inertia coefficient of D^2");
      cmd->add_option("--coeffs", common.coeffs, "full even coefficient list (a0 a2 ...)");
      cmd->add_option("--init", common.init, "zero|cosine:amp|random:seed|file:path");
      cmd->add_option("--tol", tol, "zero-mean tolerance for the ladder");
      cmd->add_option("--depth", depth, "hierarchy depth");
    }
  };

  CLI::App* sim = app.add_subcommand("simulate", "integrate m_t = 2mu_x + m_x u and track drift");
  add_common(sim, true);
  sim->add_option("--dt", dt, "time step");
  sim->add_option("--steps", steps, "number of RK4 steps");
  sim->add_option("--record-interval", record_interval, "snapshot every k steps");

  CLI::App* hier = app.add_subcommand("hierarchy", "generate the Lenard ladder");
  add_common(hier, true);
  hier->add_flag("--gradients", gradients, "include gradient samples in the report");

  CLI::App* ver = app.add_subcommand("verify", "run invariant suites");
  add_common(ver, false);
  ver->add_option("--suite", suite, "poisson|lenard|involution|classification|cohomology|all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    if (!config_path.empty()) apply_config(cmd, read_config(config_path));
    if (cmd == sim) return run_simulate(common, dt, steps, depth, tol, record_interval);
    if (cmd == hier) return run_hierarchy(common, depth, tol, gradients);
    return run_verify(common, suite);
  } catch (const biham::SingularSymbol& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const biham::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const biham::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
