#pragma once
// Trajectories of the simplex-simplex field.
//
// integrate() works in the log chart u = log(s): coordinates that start at
// exactly zero are masked and stay bitwise zero, and coordinates decaying to
// 1e-200 and below keep full relative precision.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hiernet/dopri5.hpp"
#include "hiernet/error.hpp"
#include "hiernet/field.hpp"
#include "hiernet/state.hpp"

namespace hiernet {

enum class Direction { Forward, Backward };

struct IntegratorConfig {
  double rtol = 1e-12;
  double atol = 1e-12;
  double t_end = 2000.0;
  std::optional<double> max_step;
  double sample_dt = 0.1;
  Direction direction = Direction::Forward;
  double initial_step = 1e-4;
  /// Diverged once any coordinate or the state norm exceeds this.
  double divergence_bound = 1e6;

  friend bool operator==(const IntegratorConfig&, const IntegratorConfig&) = default;

  void validate() const {
    if (!(rtol > 0.0) || !(atol > 0.0)) throw Error(ErrorKind::InvalidParameter, "rtol and atol must be > 0");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error(ErrorKind::InvalidParameter, "t_end must be >= 0");
    if (!(sample_dt > 0.0)) throw Error(ErrorKind::InvalidParameter, "sample_dt must be > 0");
    if (max_step && !(*max_step > 0.0)) throw Error(ErrorKind::InvalidParameter, "max_step must be > 0");
    if (!(initial_step > 0.0)) throw Error(ErrorKind::InvalidParameter, "initial_step must be > 0");
    if (!(divergence_bound > 1.0)) throw Error(ErrorKind::InvalidParameter, "divergence_bound must be > 1");
  }
};

enum class Termination { Completed, Diverged, StepFailure };

inline constexpr const char* to_string(Termination t) noexcept {
  switch (t) {
    case Termination::Completed: return "Completed";
    case Termination::Diverged: return "Diverged";
    case Termination::StepFailure: return "StepFailure";
  }
  return "Unknown";
}

struct IntegrationStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t evaluations = 0;
  double last_step = 0.0;
};

/// Uniformly sampled solution. Times are elapsed time from the initial state
/// (also for backward runs, where sample k lies at physical time -times[k]).
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(BlockLayout layout, Direction dir) : layout_(std::move(layout)), direction_(dir) {}

  [[nodiscard]] const BlockLayout& layout() const noexcept { return layout_; }
  [[nodiscard]] std::size_t dim() const noexcept { return layout_.dim(); }
  [[nodiscard]] std::size_t size() const noexcept { return times_.size(); }
  [[nodiscard]] bool empty() const noexcept { return times_.empty(); }
  [[nodiscard]] const std::vector<double>& times() const noexcept { return times_; }
  [[nodiscard]] std::span<const double> state(std::size_t k) const {
    return std::span<const double>(data_).subspan(k * dim(), dim());
  }
  [[nodiscard]] Direction direction() const noexcept { return direction_; }

  void push(double t, std::span<const double> s) {
    times_.push_back(t);
    data_.insert(data_.end(), s.begin(), s.end());
  }

  Termination termination = Termination::Completed;
  IntegrationStats stats;
  /// Elapsed time and state where integration stopped.
  double end_time = 0.0;
  HierState end_state;
  /// Coordinate that crossed the divergence bound, if any.
  std::optional<std::size_t> diverged_coordinate;

 private:
  BlockLayout layout_;
  Direction direction_ = Direction::Forward;
  std::vector<double> times_;
  std::vector<double> data_;
};

namespace detail {

/// Sample instants {0, dt, 2dt, ...} up to t_end, plus t_end itself if it is off-grid.
inline std::vector<double> sample_grid(double t_end, double dt) {
  const auto n = static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
  std::vector<double> g;
  g.reserve(n + 2);
  for (std::size_t k = 0; k <= n; ++k) g.push_back(static_cast<double>(k) * dt);
  if (t_end - g.back() > 1e-9 * dt) g.push_back(t_end);
  g.back() = std::min(g.back(), t_end);
  return g;
}

inline double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace detail

/// Integrates the field from s0 (all entries >= 0) in the log chart.
[[nodiscard]] inline Trajectory integrate(std::span<const double> s0, const FieldParams& p, const IntegratorConfig& cfg) {
  cfg.validate();
  const auto& L = p.layout();
  L.check(s0);
  require_finite(s0, "initial state");
  const std::size_t D = L.dim();

  ZeroMask mask(D, false);
  std::vector<double> u0(D, 0.0);
  for (std::size_t c = 0; c < D; ++c) {
    if (s0[c] < 0.0) {
      throw Error(ErrorKind::InvalidParameter, "initial coordinate " + L.name(c) + " is negative");
    }
    if (s0[c] == 0.0) {
      mask[c] = true;
    } else {
      u0[c] = std::log(s0[c]);
    }
  }

  Trajectory traj(L, cfg.direction);
  const auto grid = detail::sample_grid(cfg.t_end, cfg.sample_dt);
  std::size_t next = 1;
  traj.push(0.0, s0);

  const double log_bound = std::log(cfg.divergence_bound);
  auto to_state = [&](std::span<const double> u, std::span<double> out) {
    for (std::size_t c = 0; c < D; ++c) out[c] = mask[c] ? 0.0 : std::exp(u[c]);
  };
  auto find_divergence = [&](std::span<const double> u, std::span<const double> s) -> std::optional<std::size_t> {
    std::size_t worst = D;
    for (std::size_t c = 0; c < D; ++c) {
      if (mask[c]) continue;
      if (!std::isfinite(u[c]) || u[c] > log_bound) return c;
      if (worst == D || u[c] > u[worst]) worst = c;
    }
    if (worst != D && detail::norm2(s) > cfg.divergence_bound) return worst;
    return std::nullopt;
  };

  HierState s_tmp(D);
  to_state(u0, s_tmp);
  if (auto c = find_divergence(u0, s_tmp)) {
    traj.termination = Termination::Diverged;
    traj.diverged_coordinate = c;
    traj.end_state.assign(s0.begin(), s0.end());
    return traj;
  }

  const double sign = cfg.direction == Direction::Forward ? 1.0 : -1.0;
  std::vector<double> v_scratch, vm1_scratch;
  auto rhs = [&](std::span<const double> u, std::span<double> du) {
    detail::eval_field_log_into(u, mask, p, v_scratch, vm1_scratch, du);
    if (sign < 0.0)
      for (double& d : du) d = -d;
  };

  Dopri5Options opts;
  opts.rtol = cfg.rtol;
  opts.atol = cfg.atol;
  opts.t_end = cfg.t_end;
  opts.max_step = cfg.max_step;
  opts.initial_step = cfg.initial_step;

  std::vector<double> u_tmp(D);
  bool diverged = false;
  auto on_step = [&](const DenseStep& st) {
    while (next < grid.size() && grid[next] <= st.t1()) {
      st.eval(grid[next], u_tmp);
      to_state(u_tmp, s_tmp);
      traj.push(grid[next], s_tmp);
      ++next;
    }
    to_state(st.y1, s_tmp);
    if (auto c = find_divergence(st.y1, s_tmp)) {
      diverged = true;
      traj.diverged_coordinate = c;
      return false;
    }
    return true;
  };

  const auto res = dopri5(rhs, u0, opts, on_step, &mask);
  traj.stats = {res.accepted, res.rejected, res.evaluations, res.last_step};
  traj.end_time = res.t;
  traj.end_state.resize(D);
  to_state(res.y, traj.end_state);
  if (diverged) {
    traj.termination = Termination::Diverged;
  } else if (res.status == Dopri5Status::StepFailure) {
    traj.termination = Termination::StepFailure;
  } else {
    // Guard against a last grid point lost to rounding of t_end.
    while (next < grid.size()) {
      traj.push(grid[next], traj.end_state);
      ++next;
    }
  }
  return traj;
}

/// Same contract as integrate() but in the original coordinates; used to
/// cross-check the log chart over short horizons.
[[nodiscard]] inline Trajectory integrate_original_chart(std::span<const double> s0, const FieldParams& p,
                                                         const IntegratorConfig& cfg) {
  cfg.validate();
  const auto& L = p.layout();
  L.check(s0);
  require_finite(s0, "initial state");
  Trajectory traj(L, cfg.direction);
  const auto grid = detail::sample_grid(cfg.t_end, cfg.sample_dt);
  std::size_t next = 1;
  traj.push(0.0, s0);
  const double sign = cfg.direction == Direction::Forward ? 1.0 : -1.0;
  auto rhs = [&](std::span<const double> y, std::span<double> dy) {
    const auto f = eval_field(y, p);
    for (std::size_t c = 0; c < f.size(); ++c) dy[c] = sign * f[c];
  };
  Dopri5Options opts;
  opts.rtol = cfg.rtol;
  opts.atol = cfg.atol;
  opts.t_end = cfg.t_end;
  opts.max_step = cfg.max_step;
  opts.initial_step = cfg.initial_step;
  std::vector<double> tmp(L.dim());
  bool diverged = false;
  auto on_step = [&](const DenseStep& st) {
    while (next < grid.size() && grid[next] <= st.t1()) {
      st.eval(grid[next], tmp);
      traj.push(grid[next], tmp);
      ++next;
    }
    if (detail::norm2(st.y1) > cfg.divergence_bound) {
      diverged = true;
      return false;
    }
    return true;
  };
  const auto res = dopri5(rhs, std::vector<double>(s0.begin(), s0.end()), opts, on_step);
  traj.stats = {res.accepted, res.rejected, res.evaluations, res.last_step};
  traj.end_time = res.t;
  traj.end_state = res.y;
  traj.termination = diverged ? Termination::Diverged
                              : (res.status == Dopri5Status::StepFailure ? Termination::StepFailure
                                                                          : Termination::Completed);
  return traj;
}

/// Linear interpolation between the bracketing samples.
[[nodiscard]] inline HierState sample_at(const Trajectory& traj, double t) {
  const auto& ts = traj.times();
  if (ts.empty() || t < ts.front() || t > ts.back() || std::isnan(t)) {
    throw Error(ErrorKind::OutOfRange, "time " + std::to_string(t) + " outside the sampled range");
  }
  auto it = std::lower_bound(ts.begin(), ts.end(), t);
  auto k = static_cast<std::size_t>(it - ts.begin());
  if (*it == t) {
    auto s = traj.state(k);
    return HierState(s.begin(), s.end());
  }
  const auto a = traj.state(k - 1);
  const auto b = traj.state(k);
  const double w = (t - ts[k - 1]) / (ts[k] - ts[k - 1]);
  HierState out(a.size());
  for (std::size_t c = 0; c < a.size(); ++c) out[c] = a[c] + w * (b[c] - a[c]);
  return out;
}

}  // namespace hiernet
