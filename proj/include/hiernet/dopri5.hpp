#pragma once
// Dormand-Prince 5(4) embedded pair with PI step control and the free
// 4th-order dense output (Hairer, Norsett & Wanner, DOPRI5 "contd5").

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace hiernet {

struct Dopri5Options {
  double rtol = 1e-12;
  double atol = 1e-12;
  double t_end = 1.0;
  std::optional<double> max_step;
  double initial_step = 1e-4;
  double safety = 0.9;
  double min_factor = 0.2;
  double max_factor = 5.0;
  double pi_beta = 0.04;  // Hairer's DOPRI5 default
};

enum class Dopri5Status { Completed, Stopped, StepFailure };

struct Dopri5Result {
  Dopri5Status status = Dopri5Status::Completed;
  double t = 0.0;
  std::vector<double> y;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t evaluations = 0;
  double last_step = 0.0;
};

/// One accepted step with its continuous extension on [t0, t0 + h].
struct DenseStep {
  double t0 = 0.0;
  double h = 0.0;
  std::span<const double> y1;  // state at t0 + h
  std::vector<double> r1, r2, r3, r4, r5;

  [[nodiscard]] double t1() const noexcept { return t0 + h; }

  /// Interpolated state at t in [t0, t0 + h].
  void eval(double t, std::span<double> out) const {
    const double th = (t - t0) / h;
    const double th1 = 1.0 - th;
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
    }
  }
};

/// Integrates dy/dt = rhs(y) from t = 0 to opts.t_end.
///
/// `rhs(std::span<const double> y, std::span<double> dy)` must be autonomous.
/// `on_step(const DenseStep&)` is called after every accepted step and may
/// return false to stop early (status Stopped). Entries flagged in
/// `skip_error` are excluded from the error norm.
template <class Rhs, class OnStep>
Dopri5Result dopri5(Rhs&& rhs, std::vector<double> y, const Dopri5Options& opts, OnStep&& on_step,
                    const std::vector<bool>* skip_error = nullptr) {
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                   a76 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;
  constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                   d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                   d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

  const std::size_t n = y.size();
  Dopri5Result res;
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n), err(n);
  DenseStep dense;
  for (auto* r : {&dense.r1, &dense.r2, &dense.r3, &dense.r4, &dense.r5}) r->resize(n);

  std::size_t active = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!skip_error || !(*skip_error)[i]) ++active;

  double t = 0.0;
  const double t_end = opts.t_end;
  double h = std::min(opts.initial_step, t_end);
  if (opts.max_step) h = std::min(h, *opts.max_step);
  double err_old = 1e-4;
  bool last_rejected = false;

  auto f = [&](const std::vector<double>& in, std::vector<double>& out) {
    rhs(std::span<const double>(in), std::span<double>(out));
    ++res.evaluations;
  };

  if (t_end > 0.0) f(y, k1);
  while (t < t_end) {
    if (t + h > t_end || t + 1.01 * h >= t_end) h = t_end - t;
    if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
      res.status = Dopri5Status::StepFailure;
      break;
    }

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    f(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(tmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    f(tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    f(ynew, k7);

    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (skip_error && (*skip_error)[i]) continue;
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      const double r = err[i] / sc;
      acc += r * r;
    }
    double en = active > 0 ? std::sqrt(acc / static_cast<double>(active)) : 0.0;
    if (!std::isfinite(en)) en = std::numeric_limits<double>::infinity();

    if (en <= 1.0) {
      for (std::size_t i = 0; i < n; ++i) {
        const double ydiff = ynew[i] - y[i];
        const double bspl = h * k1[i] - ydiff;
        dense.r1[i] = y[i];
        dense.r2[i] = ydiff;
        dense.r3[i] = bspl;
        dense.r4[i] = ydiff - h * k7[i] - bspl;
        dense.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      dense.t0 = t;
      dense.h = h;

      ++res.accepted;
      res.last_step = h;
      t = (h == t_end - t) ? t_end : t + h;
      y.swap(ynew);
      k1.swap(k7);

      double fac = opts.safety * std::pow(std::max(en, 1e-10), -(0.2 - 0.75 * opts.pi_beta)) *
                   std::pow(err_old, opts.pi_beta);
      fac = std::clamp(fac, opts.min_factor, opts.max_factor);
      if (last_rejected) fac = std::min(fac, 1.0);
      err_old = std::max(en, 1e-4);
      h *= fac;
      if (opts.max_step) h = std::min(h, *opts.max_step);
      last_rejected = false;

      dense.y1 = y;
      if (!on_step(std::as_const(dense))) {
        res.status = Dopri5Status::Stopped;
        break;
      }
    } else {
      ++res.rejected;
      const double fac = std::isfinite(en)
                             ? std::max(opts.min_factor, opts.safety * std::pow(en, -(0.2 - 0.75 * opts.pi_beta)))
                             : opts.min_factor;
      h *= std::min(fac, 1.0);
      last_rejected = true;
    }
  }
  res.t = t;
  res.y = std::move(y);
  return res;
}

}  // namespace hiernet
