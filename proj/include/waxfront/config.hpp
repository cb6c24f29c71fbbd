#pragma once

// Flat JSON configuration documents, `key=value` overrides and the resolved
// form (every default materialized) that manifests record and hash.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include <json.hpp>

#include "waxfront/conductivity.hpp"
#include "waxfront/errors.hpp"
#include "waxfront/fd_solver.hpp"

namespace waxfront::config {

using nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

/// 1-based line of the first occurrence of "key" in the source, 0 if absent.
inline std::size_t line_of_key(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto pos = text.find(quoted);
  if (pos == std::string_view::npos) return 0;
  std::size_t line = 1;
  for (std::size_t i = 0; i < pos; ++i) line += text[i] == '\n';
  return line;
}

/// A parsed document plus the text it came from, for error locations.
struct Document {
  json values = json::object();
  std::string source;

  std::size_t line(std::string_view key) const { return line_of_key(source, key); }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const std::size_t l = line(key);
    std::string msg = "config field '" + key + "': " + what;
    if (l) msg += " (line " + std::to_string(l) + ")";
    throw ParseError(msg, l, key);
  }

  bool has(const std::string& key) const { return values.contains(key); }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const auto& v = values.at(key);
    if (!v.is_number()) fail(key, "expected a number");
    return v.get<double>();
  }

  int integer(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const auto& v = values.at(key);
    if (!v.is_number()) fail(key, "expected an integer");
    const double d = v.get<double>();
    if (d != std::floor(d) || std::abs(d) > 1e9) fail(key, "expected an integer");
    return static_cast<int>(d);
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const {
    if (!has(key)) return fallback;
    const auto& v = values.at(key);
    if (!v.is_array()) fail(key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) fail(key, "expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  void reject_unknown(const std::set<std::string>& allowed) const {
    for (const auto& [key, _] : values.items()) {
      if (!allowed.count(key)) fail(key, "unknown field");
    }
  }
};

inline Document parse_document(const std::string& text) {
  Document doc;
  doc.source = text;
  try {
    doc.values = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) line += text[i] == '\n';
    throw ParseError("config is not valid JSON at line " + std::to_string(line) + ": " + e.what(),
                     line, "");
  }
  if (!doc.values.is_object()) throw ParseError("config must be a JSON object", 1, "");
  return doc;
}

/// Applies `key=value` overrides; the value is read as JSON when it parses
/// and as a string otherwise.
inline void apply_overrides(Document& doc, const std::vector<std::string>& sets) {
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ParseError("override '" + s + "' must have the form key=value", 0, s);
    }
    const std::string key = s.substr(0, eq);
    const std::string raw = s.substr(eq + 1);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    doc.values[key] = std::move(value);
  }
}

inline const std::set<std::string>& solver_keys() {
  static const std::set<std::string> keys = {
      "k",        "eps",        "c",             "conductivity",        "n_x",
      "delta",    "t_end",      "safety",        "steady_tol",          "output_stride",
      "snapshot_interval", "probe_times"};
  return keys;
}

/// Either the shorthand "c" or a "conductivity" object,
/// {"family": "quadratic", "c": ...} or {"family": "tabulated", "points": [[u, D], ...]}.
inline ConductivityModel model_from(const Document& doc) {
  if (!doc.has("conductivity")) return ConductivityModel::quadratic(doc.number("c", 0.0));
  if (doc.has("c")) doc.fail("c", "give either c or conductivity, not both");
  const auto& spec = doc.values.at("conductivity");
  auto bad = [&](const std::string& what) { doc.fail("conductivity", what); };
  if (!spec.is_object() || !spec.contains("family") || !spec["family"].is_string()) {
    bad("expected an object with a \"family\" string");
  }
  const std::string family = spec["family"].get<std::string>();
  if (family == "quadratic") {
    for (const auto& [key, _] : spec.items()) {
      if (key != "family" && key != "c") bad("unknown quadratic field '" + key + "'");
    }
    if (!spec.contains("c") || !spec["c"].is_number()) bad("quadratic family needs a number c");
    return ConductivityModel::quadratic(spec["c"].get<double>());
  }
  if (family != "tabulated") bad("family must be \"quadratic\" or \"tabulated\"");
  for (const auto& [key, _] : spec.items()) {
    if (key != "family" && key != "points") bad("unknown tabulated field '" + key + "'");
  }
  if (!spec.contains("points") || !spec["points"].is_array()) bad("expected points [[u, D], ...]");
  std::vector<std::pair<double, double>> samples;
  for (const auto& p : spec["points"]) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      bad("expected points [[u, D], ...]");
    }
    samples.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return ConductivityModel::tabulated(std::move(samples));
}

/// Typed solver settings; throws ParseError for shape problems and
/// InvalidConfig for values outside the admissible set.
inline SolverConfig solver_config(const Document& doc,
                                  std::initializer_list<const char*> extra_keys = {}) {
  std::set<std::string> allowed = solver_keys();
  for (const char* k : extra_keys) allowed.insert(k);
  doc.reject_unknown(allowed);
  SolverConfig cfg;
  cfg.k = doc.number("k", cfg.k);
  cfg.eps = doc.number("eps", cfg.eps);
  cfg.model = model_from(doc);
  cfg.n_x = doc.integer("n_x", cfg.n_x);
  if (doc.has("delta") && !doc.values.at("delta").is_null()) cfg.delta = doc.number("delta", 0.0);
  cfg.t_end = doc.number("t_end", cfg.t_end);
  cfg.safety = doc.number("safety", cfg.safety);
  cfg.steady_tol = doc.number("steady_tol", cfg.steady_tol);
  cfg.output_stride = doc.number("output_stride", cfg.output_stride);
  cfg.snapshot_interval = doc.number("snapshot_interval", cfg.snapshot_interval);
  cfg.probe_times = doc.numbers("probe_times", {});
  validate(cfg);
  return cfg;
}

inline json model_json(const ConductivityModel& model) {
  json j = json::object();
  model.visit([&](const auto& m) {
    using M = std::decay_t<decltype(m)>;
    if constexpr (std::is_same_v<M, QuadraticConductivity>) {
      j = {{"family", "quadratic"}, {"c", m.c()}};
    } else {
      json pts = json::array();
      for (std::size_t i = 0; i < m.u_samples().size(); ++i) {
        pts.push_back({m.u_samples()[i], m.d_samples()[i]});
      }
      j = {{"family", "tabulated"}, {"points", pts}};
    }
  });
  return json{{"conductivity", j}};
}

/// Every numerically relevant field, with defaults (including delta) filled in.
inline json resolved_json(const SolverConfig& cfg) {
  json j = model_json(cfg.model);
  j["k"] = cfg.k;
  j["eps"] = cfg.eps;
  j["n_x"] = cfg.n_x;
  j["delta"] = resolved_delta(cfg);
  j["t_end"] = cfg.t_end;
  j["safety"] = cfg.safety;
  j["steady_tol"] = cfg.steady_tol;
  j["output_stride"] = cfg.output_stride;
  j["snapshot_interval"] = cfg.snapshot_interval;
  j["probe_times"] = cfg.probe_times;
  return j;
}

/// 64-bit FNV-1a over the canonical dump, as 16 hex digits.
inline std::string hash_json(const json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string config_hash(const SolverConfig& cfg) { return hash_json(resolved_json(cfg)); }

struct RunManifest {
  json resolved;
  std::vector<std::string> artifacts;
  std::string tool_version = kToolVersion;
  std::string config_hash;

  json to_json() const {
    return json{{"resolved_config", resolved},
                {"artifacts", artifacts},
                {"tool_version", tool_version},
                {"config_hash", config_hash}};
  }
};

inline RunManifest make_manifest(json resolved, std::vector<std::string> artifacts) {
  RunManifest m;
  m.config_hash = hash_json(resolved);
  m.resolved = std::move(resolved);
  m.artifacts = std::move(artifacts);
  return m;
}

}  // namespace waxfront::config
