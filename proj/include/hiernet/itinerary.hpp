#pragma once
// Symbolic coding of sampled trajectories.
//
// A sample is near vertex i of a level when that level's block lies within
// near_tol (sup-norm) of the unit vector e_i. Runs of consecutive samples near
// the same vertex form visits; a visit closes at the first sample that is no
// longer near it. Substructure levels only look at samples inside active
// windows, i.e. where bump_j(X) > 0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hiernet/bump.hpp"
#include "hiernet/hierarchy.hpp"
#include "hiernet/integrator.hpp"

namespace hiernet {

struct Level {
  enum class Kind { Super, Sub } kind = Kind::Super;
  std::size_t j = 0;  // substructure index for Sub

  [[nodiscard]] static Level super() { return {Kind::Super, 0}; }
  [[nodiscard]] static Level sub(std::size_t j) { return {Kind::Sub, j}; }
  [[nodiscard]] std::string to_string() const {
    return kind == Kind::Super ? "Super" : "Sub(" + std::to_string(j + 1) + ")";
  }
  friend bool operator==(const Level&, const Level&) = default;
};

struct Visit {
  std::size_t vertex = 0;  // 0-based
  double enter = 0.0;
  double exit = 0.0;
  std::size_t window = 0;  // index into active_windows (always 0 for Super)

  [[nodiscard]] double dwell() const noexcept { return exit - enter; }
  friend bool operator==(const Visit&, const Visit&) = default;
};

struct TimeWindow {
  double begin = 0.0;
  double end = 0.0;
  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

struct ItineraryReport {
  Level level;
  std::vector<Visit> visits;
  /// Intervals with bump_j(X) > 0; a single window spanning the trajectory for Super.
  std::vector<TimeWindow> active_windows;

  /// Visited vertices, 0-based.
  [[nodiscard]] std::vector<std::size_t> sequence() const {
    std::vector<std::size_t> s;
    for (const auto& v : visits) s.push_back(v.vertex);
    return s;
  }
  [[nodiscard]] std::vector<std::size_t> sequence_in_window(std::size_t w) const {
    std::vector<std::size_t> s;
    for (const auto& v : visits)
      if (v.window == w) s.push_back(v.vertex);
    return s;
  }
  /// "1,2,3,1" (1-based).
  [[nodiscard]] std::string sequence_string() const {
    std::string out;
    for (const auto& v : visits) out += (out.empty() ? "" : ",") + std::to_string(v.vertex + 1);
    return out;
  }
};

struct ItineraryOptions {
  double near_tol = 0.2;
  double min_dwell = 1.0;
};

namespace detail {

/// Vertex whose unit vector is within tol of block (sup-norm), closest first.
inline std::optional<std::size_t> near_vertex(std::span<const double> block, double tol) {
  std::optional<std::size_t> best;
  double best_d = tol;
  for (std::size_t i = 0; i < block.size(); ++i) {
    double d = 0.0;
    for (std::size_t k = 0; k < block.size(); ++k) d = std::max(d, std::abs(block[k] - (k == i ? 1.0 : 0.0)));
    if (d <= best_d) {
      if (!best || d < best_d) best = i;
      best_d = d;
    }
  }
  return best;
}

}  // namespace detail

/// Visit sequence of one level. `epsilon` is the bump width (ignored for Super).
/// Visits touching the first or last sample are censored and kept regardless of
/// min_dwell; consecutive visits to the same vertex inside a window merge.
[[nodiscard]] inline ItineraryReport extract_itinerary(const Trajectory& traj, Level level, double epsilon,
                                                       const ItineraryOptions& opt = {}) {
  ItineraryReport rep;
  rep.level = level;
  const std::size_t K = traj.size();
  if (K == 0) return rep;
  const auto& L = traj.layout();
  const auto& ts = traj.times();
  const bool sub = level.kind == Level::Kind::Sub;
  if (sub && level.j >= L.block_count()) {
    throw Error(ErrorKind::IndexOutOfRange, "substructure " + std::to_string(level.j + 1));
  }

  auto active = [&](std::size_t k) {
    if (!sub) return true;
    return bump_j(L.super_block(traj.state(k)), level.j, epsilon) > 0.0;
  };
  auto block = [&](std::size_t k) {
    const auto s = traj.state(k);
    return sub ? L.sub_block(s, level.j) : L.super_block(s);
  };

  struct Raw {
    Visit v;
    bool censored;
  };
  std::vector<Raw> raw;
  std::optional<std::size_t> cur;  // vertex of the open run
  std::size_t run_start = 0;
  bool in_window = false;

  auto close_run = [&](std::size_t k_end, double t_exit) {
    if (!cur) return;
    const bool censored = run_start == 0 || k_end + 1 >= K;
    raw.push_back({{*cur, ts[run_start], t_exit, rep.active_windows.size() - 1}, censored});
    cur.reset();
  };

  for (std::size_t k = 0; k < K; ++k) {
    const bool a = active(k);
    if (!a) {
      if (in_window) {
        close_run(k, ts[k]);
        rep.active_windows.back().end = ts[k];
        in_window = false;
      }
      continue;
    }
    if (!in_window) {
      rep.active_windows.push_back({ts[k], ts[k]});
      in_window = true;
    }
    rep.active_windows.back().end = ts[k];
    const auto v = detail::near_vertex(block(k), opt.near_tol);
    if (v != cur) {
      close_run(k, ts[k]);
      if (v) {
        cur = v;
        run_start = k;
      }
    }
  }
  if (cur) close_run(K - 1, ts[K - 1]);

  for (const auto& r : raw) {
    if (!r.censored && r.v.dwell() < opt.min_dwell) continue;
    if (!rep.visits.empty() && rep.visits.back().vertex == r.v.vertex && rep.visits.back().window == r.v.window) {
      rep.visits.back().exit = r.v.exit;
    } else {
      rep.visits.push_back(r.v);
    }
  }
  return rep;
}

struct ItineraryCheck {
  bool pass = true;
  std::size_t transitions = 0;
  std::vector<Edge> violations;  // 0-based, in order of occurrence
};

/// Every consecutive pair of visits inside one active window must be an edge of d.
[[nodiscard]] inline ItineraryCheck check_itinerary_against(const ItineraryReport& rep, const Digraph& d) {
  ItineraryCheck out;
  for (std::size_t m = 1; m < rep.visits.size(); ++m) {
    const auto& a = rep.visits[m - 1];
    const auto& b = rep.visits[m];
    if (a.window != b.window) continue;
    ++out.transitions;
    const Edge e{a.vertex, b.vertex};
    if (e.from >= d.size() || e.to >= d.size() || !d.has_edge(e.from, e.to)) {
      out.violations.push_back(e);
      out.pass = false;
    }
  }
  return out;
}

}  // namespace hiernet
