#pragma once
// Checks that a synthesized field realizes its hierarchy: equilibrium
// residuals, eigenvalue/edge correspondence, itineraries and witnesses.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hiernet/field.hpp"
#include "hiernet/integrator.hpp"
#include "hiernet/itinerary.hpp"

namespace hiernet {

// ---------------------------------------------------------------- equilibria

struct EquilibriumResidual {
  EquilibriumLabel label;
  double residual = 0.0;  // ||f||_inf
};

struct ResidualReport {
  std::vector<EquilibriumResidual> entries;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = true;
};

[[nodiscard]] inline double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

[[nodiscard]] inline double sup_distance(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) m = std::max(m, std::abs(a[c] - b[c]));
  return m;
}

[[nodiscard]] inline ResidualReport verify_equilibria(const FieldParams& p, double tol = 1e-12) {
  ResidualReport r;
  r.tol = tol;
  for (const auto& eq : designed_equilibria(p)) {
    const double res = sup_norm(eval_field(eq.state, p));
    r.entries.push_back({eq.label, res});
    r.max_residual = std::max(r.max_residual, res);
  }
  r.pass = r.max_residual <= tol;
  return r;
}

// ---------------------------------------------------------------- eigenvalues

struct AttributedEigenvalue {
  std::complex<double> value;
  std::size_t coordinate = 0;  // flat coordinate carrying the eigenvector
};

/// Eigenvalues of the Jacobian, one per coordinate. The Jacobian is block
/// lower-triangular (X drives every x^j, the x^j do not couple to each other),
/// so the spectrum is the union of the diagonal blocks' spectra.
[[nodiscard]] inline std::vector<AttributedEigenvalue> eigen_at(std::span<const double> state, const FieldParams& p) {
  const auto& L = p.layout();
  const Matrix J = jacobian(state, p);
  std::vector<AttributedEigenvalue> out;
  auto solve = [&](std::size_t off, std::size_t n) {
    if (n == 0) return;
    const auto o = static_cast<Eigen::Index>(off);
    const auto m = static_cast<Eigen::Index>(n);
    const Matrix B = J.block(o, o, m, m);
    Eigen::EigenSolver<Matrix> es(B, true);
    if (es.info() != Eigen::Success) {
      throw Error(ErrorKind::NumericalFailure, "eigenvalue solve did not converge");
    }
    const auto vals = es.eigenvalues();
    const auto vecs = es.eigenvectors();
    std::vector<bool> taken(n, false);
    // Assign each eigenvalue to its dominant eigenvector component, keeping the
    // assignment one-to-one.
    std::vector<Eigen::Index> order(n);
    for (std::size_t q = 0; q < n; ++q) order[q] = static_cast<Eigen::Index>(q);
    for (Eigen::Index q : order) {
      std::size_t best = n;
      double best_w = -1.0;
      for (std::size_t c = 0; c < n; ++c) {
        if (taken[c]) continue;
        const double w = std::abs(vecs(static_cast<Eigen::Index>(c), q));
        if (w > best_w) {
          best_w = w;
          best = c;
        }
      }
      taken[best] = true;
      out.push_back({vals(q), off + best});
    }
  };
  solve(0, L.super_size());
  for (std::size_t j = 0; j < L.block_count(); ++j) solve(L.block_offset(j), L.block_size(j));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.coordinate < b.coordinate; });
  return out;
}

[[nodiscard]] inline std::vector<AttributedEigenvalue> eigen_at(const Equilibrium& eq, const FieldParams& p) {
  return eigen_at(eq.state, p);
}

struct EigenCheckEntry {
  EquilibriumLabel label;
  std::set<std::size_t> positive;  // 0-based vertices with eigenvalue > 0
  std::set<std::size_t> expected;  // out-neighbours
  bool pass = true;
};

struct EigenCheckReport {
  std::vector<EigenCheckEntry> entries;
  bool pass = true;
};

/// Eigenvalues within this distance of zero count as undecidable and fail.
inline constexpr double kEigenSignTol = 1e-9;

[[nodiscard]] inline EigenCheckReport check_edge_eigen_correspondence(const FieldParams& p) {
  const auto& L = p.layout();
  const auto& h = p.hierarchy();
  EigenCheckReport rep;
  for (const auto& eq : designed_equilibria(p)) {
    if (eq.label.kind == EquilibriumLabel::Kind::Origin) continue;
    const auto eig = eigen_at(eq, p);
    EigenCheckEntry e;
    e.label = eq.label;
    const bool is_super = eq.label.kind == EquilibriumLabel::Kind::Super;
    const Digraph& g = is_super ? h.superstructure() : h.substructure(eq.label.j);
    const std::size_t own = is_super ? eq.label.j : eq.label.i;
    for (std::size_t k : g.out_neighbors(own)) e.expected.insert(k);
    const std::size_t off = is_super ? 0 : L.block_offset(eq.label.j);
    const std::size_t n = g.size();
    for (const auto& ev : eig) {
      if (ev.coordinate < off || ev.coordinate >= off + n) continue;
      const std::size_t v = ev.coordinate - off;
      if (v == own) continue;  // radial direction
      if (std::abs(ev.value.real()) <= kEigenSignTol) e.pass = false;
      if (ev.value.real() > 0.0) e.positive.insert(v);
    }
    e.pass = e.pass && e.positive == e.expected;
    rep.pass = rep.pass && e.pass;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

// ---------------------------------------------------------------- witnesses

struct WitnessSpec {
  std::size_t j = 0;  // source vertex of Gamma (0-based)
  std::size_t k = 0;  // target vertex
  double delta = 0.1;
};

/// Offset placed on the X_j deficit, X_k and x^k_1.
[[nodiscard]] inline double witness_offset(double delta) { return delta / 2.0; }

[[nodiscard]] inline HierState witness_initial_condition(const WitnessSpec& w, const FieldParams& p) {
  const auto& L = p.layout();
  const auto& G = p.hierarchy().superstructure();
  if (!(w.delta > 0.0) || !std::isfinite(w.delta)) throw Error(ErrorKind::InvalidParameter, "delta must be > 0");
  if (w.j >= G.size() || w.k >= G.size()) {
    throw Error(ErrorKind::VertexOutOfRange, "witness " + format_edge({w.j, w.k}));
  }
  if (!G.has_edge(w.j, w.k)) throw Error(ErrorKind::NotAnEdge, format_edge({w.j, w.k}) + " is not an edge");
  const double eta = witness_offset(w.delta);
  HierState s = L.zeros();
  s[L.super(w.j)] = 1.0 - eta;
  s[L.super(w.k)] = eta;
  s[L.sub(w.j, 0)] = 1.0;
  s[L.sub(w.k, 0)] = eta;
  return s;
}

struct WitnessOptions {
  double converge_tol = 1e-6;
  double t_start = 50.0;  // forward horizon, doubled until converged
  double t_max = 1600.0;
  double backward_t_end = 200.0;
  /// Bounded variant: inactive coordinates must end this close to 1.
  double bounded_tol = 1e-3;
  double rtol = 1e-12;
  double atol = 1e-12;
};

struct WitnessResult {
  WitnessSpec spec;
  HierState initial;
  double forward_t_end = 0.0;
  /// Forward limit: Sub(k,1), plus x^j_1 = 1 under the bounded variant.
  HierState target;
  double final_distance = 0.0;  // sup-distance to target
  bool converged = false;
  Termination forward_termination = Termination::Completed;

  Termination backward_termination = Termination::Completed;
  double backward_time = 0.0;
  std::optional<std::size_t> diverged_coordinate;
  bool diverged_in_inactive = false;  // diverging coordinate's block had bump 0
  /// Bounded variant: largest |1 - x| over nonzero coordinates of inactive blocks.
  double inactive_gap = 0.0;
  /// Backward evidence as required by the variant.
  bool backward_pass = false;

  [[nodiscard]] bool pass() const noexcept { return converged && backward_pass; }
};

namespace detail {

inline IntegratorConfig witness_config(const WitnessOptions& o, double t_end, Direction d) {
  IntegratorConfig c;
  c.rtol = o.rtol;
  c.atol = o.atol;
  c.t_end = t_end;
  c.sample_dt = std::max(t_end, 1.0);  // only the endpoint matters
  c.direction = d;
  return c;
}

}  // namespace detail

/// Forward run to Sub(k,1) with an adaptive horizon, then a backward run from
/// the same initial state.
[[nodiscard]] inline WitnessResult run_witness(const WitnessSpec& w, const FieldParams& p,
                                               const WitnessOptions& o = {}) {
  const auto& L = p.layout();
  WitnessResult r;
  r.spec = w;
  r.initial = witness_initial_condition(w, p);
  HierState target = sub_equilibrium_state(L, w.k, 0);
  // Under the bounded variant x^j_1 = 1 is fixed once inactive, so the
  // forward limit keeps it.
  if (p.variant() == Variant::HeteroclinicBounded) target[L.sub(w.j, 0)] = 1.0;
  r.target = target;

  for (double T = o.t_start;; T *= 2.0) {
    const auto tr = integrate(r.initial, p, detail::witness_config(o, T, Direction::Forward));
    r.forward_t_end = T;
    r.forward_termination = tr.termination;
    r.final_distance = sup_distance(tr.end_state, target);
    r.converged = tr.termination == Termination::Completed && r.final_distance <= o.converge_tol;
    if (r.converged || tr.termination != Termination::Completed || T * 2.0 > o.t_max) break;
  }

  const auto bw = integrate(r.initial, p, detail::witness_config(o, o.backward_t_end, Direction::Backward));
  r.backward_termination = bw.termination;
  r.backward_time = bw.end_time;
  r.diverged_coordinate = bw.diverged_coordinate;
  const auto X = L.super_block(std::span<const double>(bw.end_state));
  auto inactive = [&](std::size_t j) { return bump_j(X, j, p.epsilon()) == 0.0; };
  if (bw.termination == Termination::Diverged && bw.diverged_coordinate) {
    const int b = L.block_of(*bw.diverged_coordinate);
    r.diverged_in_inactive = b >= 0 && inactive(static_cast<std::size_t>(b));
  }
  double gap = 0.0;
  bool any = false;
  for (std::size_t j = 0; j < L.block_count(); ++j) {
    if (!inactive(j)) continue;
    for (std::size_t i = 0; i < L.block_size(j); ++i) {
      const std::size_t c = L.sub(j, i);
      if (r.initial[c] == 0.0) continue;
      gap = std::max(gap, std::abs(1.0 - bw.end_state[c]));
      any = true;
    }
  }
  r.inactive_gap = any ? gap : 0.0;
  if (p.variant() == Variant::Standard) {
    r.backward_pass = bw.termination == Termination::Diverged && r.diverged_in_inactive;
  } else {
    r.backward_pass = bw.termination == Termination::Completed && any && gap <= o.bounded_tol;
  }
  return r;
}

// ---------------------------------------------------------------- realization

struct SimulationCase {
  HierState initial;
  IntegratorConfig config;
};

struct LevelCheck {
  ItineraryReport report;
  ItineraryCheck check;
};

struct ScenarioCheck {
  Termination termination = Termination::Completed;
  double end_time = 0.0;
  std::vector<LevelCheck> levels;  // Super first, then Sub(1..N)
  bool zeros_preserved = true;
  std::size_t sample_count = 0;
  bool pass = true;
};

struct RealizationOptions {
  double equilibrium_tol = 1e-12;
  ItineraryOptions super_itinerary{0.2, 1.0};
  ItineraryOptions sub_itinerary{0.2, 0.0};
  std::vector<double> witness_deltas{1e-1, 1e-2, 1e-3};
  Timescales witness_timescales{1.0, 1.0, 1.0};
  WitnessOptions witness;
};

struct RealizationReport {
  ResidualReport equilibria;
  EigenCheckReport eigen;
  std::vector<ScenarioCheck> scenarios;
  std::vector<WitnessResult> witnesses;
  /// Criterion name -> pass.
  std::map<std::string, bool> verdicts;

  [[nodiscard]] bool pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& kv) { return kv.second; });
  }
};

/// Integrates and codes one scenario on every level.
[[nodiscard]] inline ScenarioCheck check_scenario(const FieldParams& p, const SimulationCase& sc,
                                                  const RealizationOptions& o = {}) {
  const auto& h = p.hierarchy();
  const auto tr = integrate(sc.initial, p, sc.config);
  ScenarioCheck out;
  out.termination = tr.termination;
  out.end_time = tr.end_time;
  out.sample_count = tr.size();
  out.pass = tr.termination == Termination::Completed;

  for (std::size_t c = 0; c < sc.initial.size(); ++c) {
    if (sc.initial[c] != 0.0) continue;
    for (std::size_t k = 0; k < tr.size() && out.zeros_preserved; ++k) {
      const double v = tr.state(k)[c];
      if (v != 0.0 || std::signbit(v)) out.zeros_preserved = false;
    }
  }
  out.pass = out.pass && out.zeros_preserved;

  auto add = [&](Level lv, const Digraph& g, const ItineraryOptions& io) {
    LevelCheck lc;
    lc.report = extract_itinerary(tr, lv, p.epsilon(), io);
    lc.check = check_itinerary_against(lc.report, g);
    out.pass = out.pass && lc.check.pass;
    out.levels.push_back(std::move(lc));
  };
  add(Level::super(), h.superstructure(), o.super_itinerary);
  for (std::size_t j = 0; j < h.size(); ++j) add(Level::sub(j), h.substructure(j), o.sub_itinerary);
  return out;
}

[[nodiscard]] inline RealizationReport verify_realization(const FieldParams& p,
                                                          const std::vector<SimulationCase>& scenarios,
                                                          const RealizationOptions& o = {}) {
  RealizationReport r;
  r.equilibria = verify_equilibria(p, o.equilibrium_tol);
  r.verdicts["equilibria"] = r.equilibria.pass;
  r.eigen = check_edge_eigen_correspondence(p);
  r.verdicts["eigen_edges"] = r.eigen.pass;

  bool itin = true, zeros = true, integ = true;
  for (const auto& sc : scenarios) {
    auto c = check_scenario(p, sc, o);
    integ = integ && c.termination == Termination::Completed;
    zeros = zeros && c.zeros_preserved;
    for (const auto& lv : c.levels) itin = itin && lv.check.pass;
    r.scenarios.push_back(std::move(c));
  }
  r.verdicts["integration"] = integ;
  r.verdicts["itineraries"] = itin;
  r.verdicts["zero_invariance"] = zeros;

  const FieldParams wp = p.with_timescales(o.witness_timescales);
  bool conv = true, back = true;
  for (const auto& e : p.hierarchy().superstructure().edges()) {
    for (double d : o.witness_deltas) {
      auto w = run_witness({e.from, e.to, d}, wp, o.witness);
      conv = conv && w.converged;
      back = back && w.backward_pass;
      r.witnesses.push_back(std::move(w));
    }
  }
  r.verdicts["witness_convergence"] = conv;
  r.verdicts["witness_backward"] = back;
  return r;
}

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline std::string vertex_set(const std::set<std::size_t>& s) {
  std::string out = "{";
  for (auto v : s) out += (out.size() > 1 ? "," : "") + std::to_string(v + 1);
  return out + "}";
}

}  // namespace detail

/// Plain-text rendering (report.txt).
[[nodiscard]] inline std::string render_report(const RealizationReport& r, const BlockLayout& L) {
  std::ostringstream os;
  os << "verdict: " << (r.pass() ? "PASS" : "FAIL") << "\n";
  for (const auto& [k, v] : r.verdicts) os << "  " << k << ": " << (v ? "pass" : "FAIL") << "\n";

  os << "\n[equilibria] max residual " << detail::fmt(r.equilibria.max_residual) << " (tol "
     << detail::fmt(r.equilibria.tol) << ")\n";
  for (const auto& e : r.equilibria.entries)
    if (e.residual > r.equilibria.tol) os << "  " << e.label.to_string() << " residual " << detail::fmt(e.residual) << "\n";

  os << "\n[eigenvalues] positive transverse directions vs out-neighbours\n";
  for (const auto& e : r.eigen.entries) {
    os << "  " << e.label.to_string() << ": " << detail::vertex_set(e.positive) << " expected "
       << detail::vertex_set(e.expected) << (e.pass ? "" : "  MISMATCH") << "\n";
  }

  for (std::size_t s = 0; s < r.scenarios.size(); ++s) {
    const auto& sc = r.scenarios[s];
    os << "\n[scenario " << s + 1 << "] termination " << to_string(sc.termination) << " at t=" << detail::fmt(sc.end_time)
       << ", " << sc.sample_count << " samples, zeros preserved: " << (sc.zeros_preserved ? "yes" : "NO") << "\n";
    for (const auto& lv : sc.levels) {
      os << "  " << lv.report.level.to_string() << ": " << lv.report.visits.size() << " visits, "
         << lv.report.active_windows.size() << " windows, " << lv.check.transitions << " transitions";
      if (lv.check.pass) {
        os << ", pass\n";
      } else {
        os << ", violations:";
        for (const auto& e : lv.check.violations) os << " " << format_edge(e);
        os << "\n";
      }
      os << "    " << lv.report.sequence_string() << "\n";
    }
  }

  os << "\n[witnesses]\n";
  for (const auto& w : r.witnesses) {
    os << "  edge " << format_edge({w.spec.j, w.spec.k}) << " delta " << detail::fmt(w.spec.delta) << ": distance "
       << detail::fmt(w.final_distance) << " at t=" << detail::fmt(w.forward_t_end)
       << (w.converged ? " converged" : " NOT converged") << "; backward " << to_string(w.backward_termination);
    if (w.diverged_coordinate) {
      os << " in " << L.name(*w.diverged_coordinate) << (w.diverged_in_inactive ? " (inactive)" : " (active)");
    } else {
      os << ", inactive gap " << detail::fmt(w.inactive_gap);
    }
    os << (w.backward_pass ? "" : "  FAIL") << "\n";
  }
  return os.str();
}

}  // namespace hiernet
