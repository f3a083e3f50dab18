#pragma once
// Scenario documents (JSON): hierarchy, coefficients, field, initial state,
// integrator and analysis settings. Edge lists and matrix indices are 1-based
// in the document and 0-based in memory. Errors cite the offending path.

#include <json.hpp>

#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hiernet/analysis.hpp"
#include "hiernet/coefficients.hpp"
#include "hiernet/field.hpp"
#include "hiernet/hierarchy.hpp"
#include "hiernet/integrator.hpp"

namespace hiernet {

struct CoefficientSpec {
  Orientation orientation = Orientation::Eigenvalue;
  double c_plus = 1.0;
  double c_minus = -1.5;
  /// Verbatim edge-indexed matrices; absent entries use the uniform rule.
  std::optional<Matrix> superstructure;
  std::vector<std::optional<Matrix>> substructures;  // empty or one per substructure
  CoefficientOverrides overrides;
};

struct AnalysisConfig {
  double near_tol = 0.2;
  double min_dwell = 1.0;
  double sub_min_dwell = 0.0;
  /// Sampling grid used by verification (finer than the CSV grid).
  double sample_dt = 0.005;
  std::vector<double> witness_deltas{1e-1, 1e-2, 1e-3};
  Timescales witness_timescales{1.0, 1.0, 1.0};

  friend bool operator==(const AnalysisConfig&, const AnalysisConfig&) = default;
};

struct Scenario {
  HierarchyInput hierarchy;
  CoefficientSpec coefficients;
  double epsilon = 0.2;
  Timescales timescales;
  Variant variant = Variant::Standard;
  HierState initial_state;
  IntegratorConfig integrator;
  AnalysisConfig analysis;

  [[nodiscard]] Hierarchy make_hierarchy() const { return Hierarchy::make(hierarchy); }
  [[nodiscard]] FieldParams field_params() const;
  [[nodiscard]] RealizationOptions realization_options() const {
    RealizationOptions o;
    o.super_itinerary = {analysis.near_tol, analysis.min_dwell};
    o.sub_itinerary = {analysis.near_tol, analysis.sub_min_dwell};
    o.witness_deltas = analysis.witness_deltas;
    o.witness_timescales = analysis.witness_timescales;
    return o;
  }
};

namespace detail {

inline bool same_matrix(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

inline bool same_opt_matrix(const std::optional<Matrix>& a, const std::optional<Matrix>& b) {
  return a.has_value() == b.has_value() && (!a || same_matrix(*a, *b));
}

}  // namespace detail

inline bool operator==(const CoefficientSpec& a, const CoefficientSpec& b) {
  if (a.orientation != b.orientation || a.c_plus != b.c_plus || a.c_minus != b.c_minus) return false;
  if (!detail::same_opt_matrix(a.superstructure, b.superstructure)) return false;
  if (a.substructures.size() != b.substructures.size()) return false;
  for (std::size_t j = 0; j < a.substructures.size(); ++j)
    if (!detail::same_opt_matrix(a.substructures[j], b.substructures[j])) return false;
  return a.overrides.super == b.overrides.super && a.overrides.subs == b.overrides.subs;
}

inline bool operator==(const Scenario& a, const Scenario& b) {
  return a.hierarchy == b.hierarchy && a.coefficients == b.coefficients && a.epsilon == b.epsilon &&
         a.timescales == b.timescales && a.variant == b.variant && a.initial_state == b.initial_state &&
         a.integrator == b.integrator && a.analysis == b.analysis;
}

/// Field-form coefficients for a hierarchy from a CoefficientSpec.
[[nodiscard]] inline CoefficientSet build_coefficient_set(const Hierarchy& h, const CoefficientSpec& s) {
  if (!s.superstructure && s.substructures.empty()) {
    return build_coefficients(h, s.c_plus, s.c_minus, s.overrides, s.orientation);
  }
  if (!(s.c_plus > 0.0) || !(s.c_minus < 0.0)) throw Error(ErrorKind::InvalidParameter, "need c_plus > 0 > c_minus");
  if (!s.substructures.empty() && s.substructures.size() != h.size()) {
    throw Error(ErrorKind::SubstructureCountMismatch, std::to_string(s.substructures.size()) +
                                                          " substructure matrices for " + std::to_string(h.size()) +
                                                          " substructures");
  }
  Matrix super = s.superstructure ? *s.superstructure
                                  : detail::uniform_edge_indexed(h.superstructure(), s.c_plus, s.c_minus,
                                                                 &s.overrides.super, "superstructure");
  std::vector<Matrix> subs;
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (!s.substructures.empty() && s.substructures[j]) {
      subs.push_back(*s.substructures[j]);
    } else {
      auto it = s.overrides.subs.find(j);
      subs.push_back(detail::uniform_edge_indexed(h.substructure(j), s.c_plus, s.c_minus,
                                                  it == s.overrides.subs.end() ? nullptr : &it->second,
                                                  "substructure " + std::to_string(j + 1)));
    }
  }
  return coefficients_from_matrices(h, super, subs, s.orientation);
}

inline FieldParams Scenario::field_params() const {
  const Hierarchy h = make_hierarchy();
  return FieldParams(h, build_coefficient_set(h, coefficients), epsilon, timescales, variant);
}

// ---------------------------------------------------------------- parsing

namespace detail {

using json = nlohmann::json;

[[noreturn]] inline void schema_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::SchemaError, path + ": " + msg);
}

[[noreturn]] inline void validation_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::ValidationError, path + ": " + msg);
}

inline void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) schema_error(path, "expected an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) schema_error(path.empty() ? k : path + "." + k, "unknown key");
  }
}

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
inline std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) validation_error(path, "must be finite");
  return v;
}

inline std::size_t get_count(const json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) schema_error(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < 0) validation_error(path, "must be >= 0");
  return static_cast<std::size_t>(v);
}

inline double opt_number(const json& obj, const char* key, const std::string& path, double dflt) {
  return obj.contains(key) ? get_number(obj.at(key), join(path, key)) : dflt;
}

inline const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) schema_error(join(path, key), "missing");
  return obj.at(key);
}

inline std::vector<double> get_vector(const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], index(path, i)));
  return out;
}

inline Matrix get_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema_error(path, "expected a non-empty array of rows");
  const auto n = j.size();
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = get_vector(j[r], index(path, r));
    if (row.size() != n) validation_error(index(path, r), "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n));
    for (std::size_t c = 0; c < n; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
  }
  return m;
}

inline Edge get_edge(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) schema_error(path, "expected [from, to]");
  const auto a = get_count(j[0], index(path, 0));
  const auto b = get_count(j[1], index(path, 1));
  if (a == 0 || b == 0) validation_error(path, "vertices are numbered from 1");
  return {a - 1, b - 1};
}

inline EdgeList get_graph(const json& j, const std::string& path) {
  check_keys(j, path, {"vertices", "edges"});
  EdgeList g;
  g.n_vertices = get_count(require(j, "vertices", path), join(path, "vertices"));
  const auto& e = require(j, "edges", path);
  if (!e.is_array()) schema_error(join(path, "edges"), "expected an array of [from, to] pairs");
  for (std::size_t i = 0; i < e.size(); ++i) g.edges.push_back(get_edge(e[i], index(join(path, "edges"), i)));
  return g;
}

inline std::map<Edge, double> get_overrides(const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of [from, to, value]");
  std::map<Edge, double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& t = j[i];
    const auto p = index(path, i);
    if (!t.is_array() || t.size() != 3) schema_error(p, "expected [from, to, value]");
    json pair = json::array({t[0], t[1]});
    out[get_edge(pair, p)] = get_number(t[2], index(p, 2));
  }
  return out;
}

inline Timescales get_timescales(const json& j, const std::string& path) {
  check_keys(j, path, {"phi", "psi", "omega"});
  Timescales t;
  t.phi = opt_number(j, "phi", path, 1.0);
  t.psi = opt_number(j, "psi", path, 1.0);
  t.omega = opt_number(j, "omega", path, 1.0);
  for (auto [v, k] : {std::pair{t.phi, "phi"}, {t.psi, "psi"}, {t.omega, "omega"}}) {
    if (!(v > 0.0)) validation_error(join(path, k), "timescales must be > 0");
  }
  return t;
}

inline std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace detail

[[nodiscard]] inline Orientation parse_orientation(const std::string& s) {
  const auto l = detail::lower(s);
  if (l == "eigenvalue") return Orientation::Eigenvalue;
  if (l == "literal") return Orientation::Literal;
  throw Error(ErrorKind::SchemaError, "orientation must be 'eigenvalue' or 'literal', got '" + s + "'");
}

[[nodiscard]] inline Variant parse_variant(const std::string& s) {
  const auto l = detail::lower(s);
  if (l == "standard") return Variant::Standard;
  if (l == "bounded" || l == "heteroclinic_bounded") return Variant::HeteroclinicBounded;
  throw Error(ErrorKind::SchemaError, "variant must be 'standard' or 'bounded', got '" + s + "'");
}

inline const char* to_string(Orientation o) { return o == Orientation::Eigenvalue ? "eigenvalue" : "literal"; }
inline const char* to_string(Variant v) { return v == Variant::Standard ? "standard" : "bounded"; }

/// Checks the assembled scenario against every component invariant.
inline void validate_scenario(const Scenario& s) {
  const auto v = validate_hierarchy(s.hierarchy);
  if (!v.empty()) {
    std::string msg;
    for (const auto& x : v) msg += (msg.empty() ? "" : "; ") + x.to_string();
    throw Error(ErrorKind::ValidationError, "hierarchy: " + msg);
  }
  if (!(s.epsilon > 0.0) || !(s.epsilon < FieldParams::max_epsilon())) {
    detail::validation_error("field.epsilon", "epsilon = " + detail::fmt(s.epsilon) +
                                                  " violates the realization bound 0 < epsilon < sqrt(2)/2");
  }
  const Hierarchy h = s.make_hierarchy();
  try {
    (void)s.field_params();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ValidationError) throw;
    throw Error(ErrorKind::ValidationError, std::string("coefficients: ") + e.what());
  }
  const BlockLayout L(h);
  if (s.initial_state.size() != L.dim()) {
    detail::validation_error("initial_state", "has " + std::to_string(s.initial_state.size()) + " entries, expected " +
                                                  std::to_string(L.dim()));
  }
  for (std::size_t c = 0; c < L.dim(); ++c) {
    if (!(s.initial_state[c] >= 0.0)) detail::validation_error("initial_state." + L.name(c), "must be >= 0");
  }
  try {
    s.integrator.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::ValidationError, std::string("integrator: ") + e.what());
  }
  const auto& a = s.analysis;
  if (!(a.near_tol > 0.0 && a.near_tol < 0.5)) detail::validation_error("analysis.near_tol", "must lie in (0, 0.5)");
  if (!(a.min_dwell >= 0.0)) detail::validation_error("analysis.min_dwell", "must be >= 0");
  if (!(a.sub_min_dwell >= 0.0)) detail::validation_error("analysis.sub_min_dwell", "must be >= 0");
  if (!(a.sample_dt > 0.0)) detail::validation_error("analysis.sample_dt", "must be > 0");
  for (std::size_t i = 0; i < a.witness_deltas.size(); ++i)
    if (!(a.witness_deltas[i] > 0.0)) detail::validation_error(detail::index("analysis.witness_deltas", i), "must be > 0");
}

/// Parses and validates a scenario document.
[[nodiscard]] inline Scenario parse_scenario(const std::string& text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  detail::check_keys(doc, "", {"hierarchy", "coefficients", "field", "initial_state", "integrator", "analysis"});
  Scenario s;

  const auto& hj = detail::require(doc, "hierarchy", "");
  detail::check_keys(hj, "hierarchy", {"superstructure", "substructures"});
  s.hierarchy.superstructure = detail::get_graph(detail::require(hj, "superstructure", "hierarchy"), "hierarchy.superstructure");
  const auto& subs = detail::require(hj, "substructures", "hierarchy");
  if (!subs.is_array()) detail::schema_error("hierarchy.substructures", "expected an array");
  for (std::size_t j = 0; j < subs.size(); ++j)
    s.hierarchy.substructures.push_back(detail::get_graph(subs[j], detail::index("hierarchy.substructures", j)));

  if (doc.contains("coefficients")) {
    const auto& cj = doc.at("coefficients");
    const std::string P = "coefficients";
    detail::check_keys(cj, P, {"orientation", "c_plus", "c_minus", "superstructure", "substructures", "overrides"});
    auto& c = s.coefficients;
    if (cj.contains("orientation")) {
      if (!cj["orientation"].is_string()) detail::schema_error(P + ".orientation", "expected a string");
      try {
        c.orientation = parse_orientation(cj["orientation"].get<std::string>());
      } catch (const Error& e) {
        detail::schema_error(P + ".orientation", e.what());
      }
    }
    c.c_plus = detail::opt_number(cj, "c_plus", P, 1.0);
    c.c_minus = detail::opt_number(cj, "c_minus", P, -1.5);
    if (!(c.c_plus > 0.0)) detail::validation_error(P + ".c_plus", "must be > 0");
    if (!(c.c_minus < 0.0)) detail::validation_error(P + ".c_minus", "must be < 0");
    if (cj.contains("superstructure")) c.superstructure = detail::get_matrix(cj["superstructure"], P + ".superstructure");
    if (cj.contains("substructures")) {
      const auto& m = cj["substructures"];
      if (!m.is_array()) detail::schema_error(P + ".substructures", "expected an array of matrices or nulls");
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[j].is_null()) {
          c.substructures.emplace_back();
        } else {
          c.substructures.emplace_back(detail::get_matrix(m[j], detail::index(P + ".substructures", j)));
        }
      }
    }
    if (cj.contains("overrides")) {
      const auto& o = cj["overrides"];
      detail::check_keys(o, P + ".overrides", {"superstructure", "substructures"});
      if (o.contains("superstructure"))
        c.overrides.super = detail::get_overrides(o["superstructure"], P + ".overrides.superstructure");
      if (o.contains("substructures")) {
        const auto& so = o["substructures"];
        if (!so.is_object()) detail::schema_error(P + ".overrides.substructures", "expected an object keyed by substructure number");
        for (const auto& [k, v] : so.items()) {
          const auto path = P + ".overrides.substructures." + k;
          std::size_t idx = 0;
          try {
            idx = std::stoul(k);
          } catch (...) {
            detail::schema_error(path, "key must be a substructure number");
          }
          if (idx == 0) detail::validation_error(path, "substructures are numbered from 1");
          c.overrides.subs[idx - 1] = detail::get_overrides(v, path);
        }
      }
    }
  }

  if (doc.contains("field")) {
    const auto& fj = doc.at("field");
    detail::check_keys(fj, "field", {"epsilon", "timescales", "variant"});
    s.epsilon = detail::opt_number(fj, "epsilon", "field", 0.2);
    if (fj.contains("timescales")) s.timescales = detail::get_timescales(fj["timescales"], "field.timescales");
    if (fj.contains("variant")) {
      if (!fj["variant"].is_string()) detail::schema_error("field.variant", "expected a string");
      try {
        s.variant = parse_variant(fj["variant"].get<std::string>());
      } catch (const Error& e) {
        detail::schema_error("field.variant", e.what());
      }
    }
  }

  const auto& ij = detail::require(doc, "initial_state", "");
  detail::check_keys(ij, "initial_state", {"X", "x"});
  s.initial_state = detail::get_vector(detail::require(ij, "X", "initial_state"), "initial_state.X");
  if (s.initial_state.size() != s.hierarchy.superstructure.n_vertices) {
    detail::validation_error("initial_state.X", "has " + std::to_string(s.initial_state.size()) + " entries, expected " +
                                                    std::to_string(s.hierarchy.superstructure.n_vertices));
  }
  const auto& xs = detail::require(ij, "x", "initial_state");
  if (!xs.is_array()) detail::schema_error("initial_state.x", "expected an array of blocks");
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const auto b = detail::get_vector(xs[j], detail::index("initial_state.x", j));
    if (j < s.hierarchy.substructures.size() && b.size() != s.hierarchy.substructures[j].n_vertices) {
      detail::validation_error(detail::index("initial_state.x", j),
                               "has " + std::to_string(b.size()) + " entries, expected " +
                                   std::to_string(s.hierarchy.substructures[j].n_vertices));
    }
    s.initial_state.insert(s.initial_state.end(), b.begin(), b.end());
  }

  if (doc.contains("integrator")) {
    const auto& g = doc.at("integrator");
    const std::string P = "integrator";
    detail::check_keys(g, P, {"rtol", "atol", "t_end", "max_step", "sample_dt", "initial_step", "divergence_bound"});
    auto& c = s.integrator;
    c.rtol = detail::opt_number(g, "rtol", P, c.rtol);
    c.atol = detail::opt_number(g, "atol", P, c.atol);
    c.t_end = detail::opt_number(g, "t_end", P, c.t_end);
    c.sample_dt = detail::opt_number(g, "sample_dt", P, c.sample_dt);
    c.initial_step = detail::opt_number(g, "initial_step", P, c.initial_step);
    c.divergence_bound = detail::opt_number(g, "divergence_bound", P, c.divergence_bound);
    if (g.contains("max_step") && !g["max_step"].is_null()) c.max_step = detail::get_number(g["max_step"], P + ".max_step");
  }

  if (doc.contains("analysis")) {
    const auto& a = doc.at("analysis");
    const std::string P = "analysis";
    detail::check_keys(a, P, {"near_tol", "min_dwell", "sub_min_dwell", "sample_dt", "witness_deltas", "witness_timescales"});
    auto& c = s.analysis;
    c.near_tol = detail::opt_number(a, "near_tol", P, c.near_tol);
    c.min_dwell = detail::opt_number(a, "min_dwell", P, c.min_dwell);
    c.sub_min_dwell = detail::opt_number(a, "sub_min_dwell", P, c.sub_min_dwell);
    c.sample_dt = detail::opt_number(a, "sample_dt", P, c.sample_dt);
    if (a.contains("witness_deltas")) c.witness_deltas = detail::get_vector(a["witness_deltas"], P + ".witness_deltas");
    if (a.contains("witness_timescales"))
      c.witness_timescales = detail::get_timescales(a["witness_timescales"], P + ".witness_timescales");
  }

  validate_scenario(s);
  return s;
}

[[nodiscard]] inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

// ---------------------------------------------------------------- writing

namespace detail {

inline json graph_json(const EdgeList& g) {
  json e = json::array();
  for (const auto& x : g.edges) e.push_back({x.from + 1, x.to + 1});
  return {{"vertices", g.n_vertices}, {"edges", e}};
}

inline json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

inline json overrides_json(const std::map<Edge, double>& o) {
  json a = json::array();
  for (const auto& [e, v] : o) a.push_back({e.from + 1, e.to + 1, v});
  return a;
}

inline json timescales_json(const Timescales& t) { return {{"phi", t.phi}, {"psi", t.psi}, {"omega", t.omega}}; }

}  // namespace detail

[[nodiscard]] inline std::string scenario_to_json(const Scenario& s) {
  using detail::json;
  json doc;
  json subs = json::array();
  for (const auto& g : s.hierarchy.substructures) subs.push_back(detail::graph_json(g));
  doc["hierarchy"] = {{"superstructure", detail::graph_json(s.hierarchy.superstructure)}, {"substructures", subs}};

  const auto& c = s.coefficients;
  json cj = {{"orientation", to_string(c.orientation)}, {"c_plus", c.c_plus}, {"c_minus", c.c_minus}};
  if (c.superstructure) cj["superstructure"] = detail::matrix_json(*c.superstructure);
  if (!c.substructures.empty()) {
    json m = json::array();
    for (const auto& x : c.substructures) m.push_back(x ? detail::matrix_json(*x) : json(nullptr));
    cj["substructures"] = m;
  }
  if (!c.overrides.super.empty() || !c.overrides.subs.empty()) {
    json o = json::object();
    if (!c.overrides.super.empty()) o["superstructure"] = detail::overrides_json(c.overrides.super);
    if (!c.overrides.subs.empty()) {
      json so = json::object();
      for (const auto& [j, m] : c.overrides.subs) so[std::to_string(j + 1)] = detail::overrides_json(m);
      o["substructures"] = so;
    }
    cj["overrides"] = o;
  }
  doc["coefficients"] = cj;

  doc["field"] = {{"epsilon", s.epsilon}, {"timescales", detail::timescales_json(s.timescales)}, {"variant", to_string(s.variant)}};

  const std::size_t N = s.hierarchy.superstructure.n_vertices;
  json X = json::array();
  for (std::size_t c2 = 0; c2 < N && c2 < s.initial_state.size(); ++c2) X.push_back(s.initial_state[c2]);
  json xs = json::array();
  std::size_t off = N;
  for (const auto& g : s.hierarchy.substructures) {
    json b = json::array();
    for (std::size_t i = 0; i < g.n_vertices && off + i < s.initial_state.size(); ++i) b.push_back(s.initial_state[off + i]);
    off += g.n_vertices;
    xs.push_back(b);
  }
  doc["initial_state"] = {{"X", X}, {"x", xs}};

  const auto& g = s.integrator;
  json ij = {{"rtol", g.rtol},
             {"atol", g.atol},
             {"t_end", g.t_end},
             {"sample_dt", g.sample_dt},
             {"initial_step", g.initial_step},
             {"divergence_bound", g.divergence_bound}};
  if (g.max_step) ij["max_step"] = *g.max_step;
  doc["integrator"] = ij;

  const auto& a = s.analysis;
  doc["analysis"] = {{"near_tol", a.near_tol},
                     {"min_dwell", a.min_dwell},
                     {"sub_min_dwell", a.sub_min_dwell},
                     {"sample_dt", a.sample_dt},
                     {"witness_deltas", a.witness_deltas},
                     {"witness_timescales", detail::timescales_json(a.witness_timescales)}};
  return doc.dump(2) + "\n";
}

inline void write_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
  out << scenario_to_json(s);
}

}  // namespace hiernet
