#pragma once

// File formats:
//   GridFunction  — CSV, one sample per line; JSON {"n": N, "samples": [...]}.
//   Spectrum      — JSON list of [re, im] pairs for n = -N/2+1 .. N/2.
//   InertiaOperator — JSON {"even_coeffs": [...]}.
//   CocycleOperator — JSON {"m0": number | grid-function object, "beta": r}.
//   TwoCochain    — JSON {"coeffs": [number | grid-function object, ...]}.
//   HierarchyResult — JSON per-level report (CLI-facing).
//   DriftSeries   — CSV with columns t, H_1..H_K, drift_1..drift_K.
//
// Machine-readable *reports* are emitted through JsonWriter, which fixes
// floating-point formatting to 17 significant digits and preserves insertion
// order, so identical runs produce byte-identical output.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "biham/cohomology.hpp"
#include "biham/errors.hpp"
#include "biham/flow.hpp"
#include "biham/grid_function.hpp"
#include "biham/hierarchy.hpp"
#include "biham/operators.hpp"

namespace biham {

// ---------------------------------------------------------------------------
// nlohmann adapters for stored values.

inline nlohmann::json to_json(const GridFunction& f) {
  return nlohmann::json{{"n", f.size()}, {"samples", f.samples()}};
}

inline GridFunction grid_function_from_json(const nlohmann::json& j) {
  const auto samples = j.at("samples").get<std::vector<double>>();
  if (j.contains("n") && j.at("n").get<std::size_t>() != samples.size())
    throw InvalidArgument("grid function JSON: 'n' disagrees with sample count");
  return GridFunction(samples);
}

inline nlohmann::json to_json(const Spectrum& s) {
  nlohmann::json pairs = nlohmann::json::array();
  for (int n = s.min_wavenumber(); n <= s.max_wavenumber(); ++n) {
    const auto c = s.coeff(n);
    pairs.push_back({c.real(), c.imag()});
  }
  return pairs;
}

inline nlohmann::json to_json(const InertiaOperator& a) {
  return nlohmann::json{{"even_coeffs", a.even_coeffs()}};
}

inline InertiaOperator inertia_from_json(const nlohmann::json& j) {
  return InertiaOperator(j.at("even_coeffs").get<std::vector<double>>());
}

inline nlohmann::json to_json(const CocycleOperator& q, std::size_t grid_n) {
  nlohmann::json j;
  if (q.has_constant_m0())
    j["m0"] = q.constant_m0();
  else
    j["m0"] = to_json(q.m0_grid(grid_n));
  j["beta"] = q.beta();
  return j;
}

inline CocycleOperator cocycle_from_json(const nlohmann::json& j) {
  const double beta = j.at("beta").get<double>();
  if (j.at("m0").is_number()) return CocycleOperator(j.at("m0").get<double>(), beta);
  return CocycleOperator(grid_function_from_json(j.at("m0")), beta);
}

inline nlohmann::json to_json(const TwoCochain& k) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : k.coeffs()) coeffs.push_back(to_json(c));
  return nlohmann::json{{"coeffs", coeffs}};
}

inline TwoCochain cochain_from_json(const nlohmann::json& j, std::size_t default_n = 256) {
  std::vector<CochainCoeff> coeffs;
  for (const auto& c : j.at("coeffs")) {
    if (c.is_number())
      coeffs.emplace_back(c.get<double>());
    else
      coeffs.emplace_back(grid_function_from_json(c));
  }
  return TwoCochain(std::move(coeffs), default_n);
}

// ---------------------------------------------------------------------------
// CSV.

inline std::string to_csv(const GridFunction& f) {
  std::string out;
  char line[64];
  for (double s : f.samples()) {
    std::snprintf(line, sizeof line, "%.17g\n", s);
    out += line;
  }
  return out;
}

inline GridFunction grid_function_from_csv(std::istream& in) {
  std::vector<double> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    samples.push_back(std::stod(line));
  }
  return GridFunction(std::move(samples));
}

inline std::string to_csv(const DriftSeries& s) {
  std::string out = "t";
  const int depth = s.depth();
  for (int k = 1; k <= depth; ++k) out += ",H_" + std::to_string(k);
  for (int k = 1; k <= depth; ++k) out += ",drift_" + std::to_string(k);
  out += "\n";
  char cell[64];
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    std::snprintf(cell, sizeof cell, "%.17g", s.times[i]);
    out += cell;
    for (int k = 0; k < depth; ++k) {
      std::snprintf(cell, sizeof cell, ",%.17g", s.H_values[static_cast<std::size_t>(k)][i]);
      out += cell;
    }
    for (int k = 0; k < depth; ++k) {
      std::snprintf(cell, sizeof cell, ",%.17g",
                    s.relative_drifts[static_cast<std::size_t>(k)][i]);
      out += cell;
    }
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Deterministic report writer: ordered keys, %.17g numbers.

class JsonWriter {
 public:
  static std::string number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }

  JsonWriter& begin_object() { return raw("{"); }
  JsonWriter& end_object() { return close("}"); }
  JsonWriter& begin_array() { return raw("["); }
  JsonWriter& end_array() { return close("]"); }

  JsonWriter& key(const std::string& k) {
    separator();
    out_ += '"' + escape(k) + "\":";
    fresh_ = true;
    return *this;
  }

  JsonWriter& value(double x) { return atom(number(x)); }
  JsonWriter& value(int x) { return atom(std::to_string(x)); }
  JsonWriter& value(std::size_t x) { return atom(std::to_string(x)); }
  JsonWriter& value(bool b) { return atom(b ? "true" : "false"); }
  JsonWriter& value(const std::string& s) { return atom('"' + escape(s) + '"'); }
  JsonWriter& value(const char* s) { return value(std::string(s)); }

  template <typename T>
  JsonWriter& field(const std::string& k, const T& v) {
    key(k);
    return value(v);
  }

  const std::string& str() const { return out_; }

 private:
  JsonWriter& raw(const std::string& s) {
    separator();
    out_ += s;
    fresh_ = true;
    return *this;
  }
  JsonWriter& close(const std::string& s) {
    out_ += s;
    fresh_ = false;
    return *this;
  }
  JsonWriter& atom(const std::string& s) {
    separator();
    out_ += s;
    fresh_ = false;
    return *this;
  }
  void separator() {
    if (!fresh_ && !out_.empty() && out_.back() != '{' && out_.back() != '[' &&
        out_.back() != ':')
      out_ += ',';
    fresh_ = false;
  }
  static std::string escape(const std::string& s) {
    std::string r;
    for (char c : s) {
      if (c == '"' || c == '\\') r += '\\';
      r += c;
    }
    return r;
  }

  std::string out_;
  bool fresh_ = false;
};

/// CLI-facing hierarchy report.
inline std::string hierarchy_report_json(const HierarchyResult& r, bool include_gradients,
                                         int sample_stride = 1) {
  JsonWriter w;
  w.begin_object();
  w.key("A");
  w.begin_object().key("even_coeffs").begin_array();
  for (double c : r.A.even_coeffs()) w.value(c);
  w.end_array().end_object();
  w.field("n", r.m.size());
  w.field("depth", r.depth());
  w.key("broken_at");
  if (r.diagnostics.broken_at)
    w.value(*r.diagnostics.broken_at);
  else
    w.value(false);
  w.key("levels").begin_array();
  for (const auto& lev : r.levels) {
    w.begin_object();
    w.field("k", lev.k);
    w.field("H", lev.H_value);
    w.field("mean_X", r.diagnostics.x_means[static_cast<std::size_t>(lev.k) - 1]);
    if (lev.k < r.depth())
      w.field("lenard_residual",
              r.diagnostics.lenard_residuals[static_cast<std::size_t>(lev.k) - 1]);
    if (include_gradients) {
      w.key("G").begin_array();
      for (std::size_t j = 0; j < lev.G.size(); j += static_cast<std::size_t>(sample_stride))
        w.value(lev.G[j]);
      w.end_array();
    }
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open output file: " + path);
  out << content;
}

}  // namespace biham
