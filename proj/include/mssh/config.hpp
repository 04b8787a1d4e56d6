#pragma once

// Strict JSON configuration for walk runs.
//
//   { "half_length": int,                      optional, auto-sized if absent
//     "theta": number,                         optional, default -pi/2
//     "regions": [ { "from": int, "to": int,   "from"/"to" optional on the
//                    "phi_a": number,          first/last region (unbounded)
//                    "phi_b": number } ],
//     "edge_lengths": { "internal": int, "external": int },   optional
//     "steps": int,                            optional, default 200
//     "substeps_per_record": int,              optional
//     "injection": { "cell": int, "subsite": "a"|"b",
//                    "direction": "left"|"right" } }         optional
//
// Unknown keys are rejected; errors carry the path of the offending field.

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mssh/diamond.hpp"
#include "mssh/errors.hpp"
#include "mssh/walk.hpp"

namespace mssh {

struct RunConfig {
  WalkConfig walk;
};

namespace detail {

using nlohmann::json;

inline std::string join_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

inline void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* a : allowed) known = known || it.key() == a;
    if (!known) throw ConfigError(join_path(path, it.key()), "unknown key");
  }
}

inline const json& require_object(const json& v, const std::string& path) {
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  return v;
}

inline int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  const auto x = v.get<long long>();
  if (x < INT_MIN || x > INT_MAX) throw ConfigError(path, "integer out of range");
  return static_cast<int>(x);
}

inline double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
  return x;
}

inline std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

}  // namespace detail

inline RunConfig parse_config(const nlohmann::json& doc) {
  using detail::as_int;
  using detail::as_number;
  detail::require_object(doc, "");
  detail::reject_unknown(doc, "",
                         {"half_length", "theta", "regions", "edge_lengths", "steps", "substeps_per_record", "injection"});

  RunConfig cfg;
  WalkConfig& w = cfg.walk;
  const EdgeConvention conv = default_convention();
  w.internal_length = conv.internal_length;

  if (!doc.contains("regions")) throw ConfigError("regions", "required");
  const auto& regions = doc.at("regions");
  w.profile.regions.clear();
  if (!regions.is_array() || regions.empty()) throw ConfigError("regions", "expected a nonempty array");
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const std::string path = "regions[" + std::to_string(i) + "]";
    const auto& r = detail::require_object(regions[i], path);
    detail::reject_unknown(r, path, {"from", "to", "phi_a", "phi_b"});
    PhaseRegion region;
    if (r.contains("from")) region.from = as_int(r.at("from"), path + ".from");
    if (r.contains("to")) region.to = as_int(r.at("to"), path + ".to");
    if (!r.contains("phi_a")) throw ConfigError(path + ".phi_a", "required");
    if (!r.contains("phi_b")) throw ConfigError(path + ".phi_b", "required");
    region.phi_a = as_number(r.at("phi_a"), path + ".phi_a");
    region.phi_b = as_number(r.at("phi_b"), path + ".phi_b");
    w.profile.regions.push_back(region);
  }
  if (doc.contains("theta")) w.theta = as_number(doc.at("theta"), "theta");
  if (doc.contains("half_length")) {
    w.half_length = as_int(doc.at("half_length"), "half_length");
    if (*w.half_length < 1) throw ConfigError("half_length", "must be >= 1");
  }
  if (doc.contains("edge_lengths")) {
    const auto& el = detail::require_object(doc.at("edge_lengths"), "edge_lengths");
    detail::reject_unknown(el, "edge_lengths", {"internal", "external"});
    if (el.contains("internal")) w.internal_length = as_int(el.at("internal"), "edge_lengths.internal");
    if (el.contains("external")) w.external_length = as_int(el.at("external"), "edge_lengths.external");
    if (w.internal_length < 1) throw ConfigError("edge_lengths.internal", "must be >= 1");
    if (w.external_length < 1) throw ConfigError("edge_lengths.external", "must be >= 1");
  }
  if (doc.contains("steps")) {
    w.n_record = as_int(doc.at("steps"), "steps");
    if (w.n_record < 0) throw ConfigError("steps", "must be >= 0");
  }
  if (doc.contains("substeps_per_record")) {
    w.substeps_per_record = as_int(doc.at("substeps_per_record"), "substeps_per_record");
    if (*w.substeps_per_record < 1) throw ConfigError("substeps_per_record", "must be >= 1");
  }
  if (doc.contains("injection")) {
    const auto& inj = detail::require_object(doc.at("injection"), "injection");
    detail::reject_unknown(inj, "injection", {"cell", "subsite", "direction"});
    if (inj.contains("cell")) w.inject_cell = as_int(inj.at("cell"), "injection.cell");
    if (inj.contains("subsite")) {
      const auto s = detail::as_string(inj.at("subsite"), "injection.subsite");
      if (s != "a" && s != "b") throw ConfigError("injection.subsite", "expected \"a\" or \"b\"");
      w.inject_subsite = s == "a" ? Subsite::a : Subsite::b;
    }
    if (inj.contains("direction")) {
      const auto d = detail::as_string(inj.at("direction"), "injection.direction");
      if (d != "left" && d != "right") throw ConfigError("injection.direction", "expected \"left\" or \"right\"");
      w.inject_direction = d == "left" ? Direction::left : Direction::right;
    }
  }

  const int m = w.resolved_half_length();
  w.profile.validate(m);
  if (w.inject_cell < -m || w.inject_cell > m) throw ConfigError("injection.cell", "outside the chain");
  return cfg;
}

inline RunConfig parse_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace mssh
