#pragma once
// Simplex-simplex vector field on (X, x^1, ..., x^N):
//
//   dX_j/dt   = Phi X_j (1 - |X|^2 + sum_k a_jk X_k^2)
//   dx^j_i/dt = x^j_i ( Psi (1 - |x^j|^2 + sum_k alpha^j_ik (x^j_k)^2) b_j(X)
//                      - Omega (1 - b_j(X)) g )
//
// with b_j(X) = bump(|X - e_j|^2, eps), g = 1 (Standard) or g = 1 - x^j_i
// (HeteroclinicBounded). Every equation carries its own coordinate as a
// factor, so the bracketed growth rates are also the log-chart derivatives.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hiernet/bump.hpp"
#include "hiernet/coefficients.hpp"
#include "hiernet/error.hpp"
#include "hiernet/hierarchy.hpp"
#include "hiernet/state.hpp"

namespace hiernet {

enum class Variant { Standard, HeteroclinicBounded };

struct Timescales {
  double phi = 1.0;    // superstructure speed
  double psi = 1.0;    // active substructure speed
  double omega = 1.0;  // inactive substructure decay

  friend bool operator==(const Timescales&, const Timescales&) = default;
};

/// Immutable description of one vector field. Construction validates.
class FieldParams {
 public:
  /// Largest bump width accepted (strict bound).
  static double max_epsilon() { return std::sqrt(2.0) / 2.0; }

  FieldParams(Hierarchy h, CoefficientSet c, double epsilon, Timescales ts = {},
              Variant variant = Variant::Standard)
      : hierarchy_(std::move(h)), coeffs_(std::move(c)), epsilon_(epsilon), ts_(ts), variant_(variant),
        layout_(hierarchy_) {
    const auto n = static_cast<Eigen::Index>(hierarchy_.size());
    if (coeffs_.a.rows() != n || coeffs_.a.cols() != n || coeffs_.alphas.size() != hierarchy_.size()) {
      throw Error(ErrorKind::DimensionMismatch, "coefficients do not match the hierarchy");
    }
    for (std::size_t j = 0; j < hierarchy_.size(); ++j) {
      const auto m = static_cast<Eigen::Index>(hierarchy_.substructure(j).size());
      if (coeffs_.alphas[j].rows() != m || coeffs_.alphas[j].cols() != m) {
        throw Error(ErrorKind::DimensionMismatch, "coefficients of substructure " + std::to_string(j + 1));
      }
    }
    if (!(epsilon_ > 0.0) || !(epsilon_ < max_epsilon())) {
      throw Error(ErrorKind::InvalidParameter,
                  "epsilon = " + std::to_string(epsilon_) + " violates 0 < epsilon < sqrt(2)/2");
    }
    if (!(ts_.phi > 0.0) || !(ts_.psi > 0.0) || !(ts_.omega > 0.0)) {
      throw Error(ErrorKind::InvalidParameter, "timescales Phi, Psi, Omega must be > 0");
    }
    if (!std::isfinite(ts_.phi) || !std::isfinite(ts_.psi) || !std::isfinite(ts_.omega)) {
      throw Error(ErrorKind::InvalidParameter, "timescales must be finite");
    }
  }

  [[nodiscard]] const Hierarchy& hierarchy() const noexcept { return hierarchy_; }
  [[nodiscard]] const CoefficientSet& coefficients() const noexcept { return coeffs_; }
  [[nodiscard]] double epsilon() const noexcept { return epsilon_; }
  [[nodiscard]] const Timescales& timescales() const noexcept { return ts_; }
  [[nodiscard]] Variant variant() const noexcept { return variant_; }
  [[nodiscard]] const BlockLayout& layout() const noexcept { return layout_; }
  [[nodiscard]] std::size_t dim() const noexcept { return layout_.dim(); }

  /// Non-fatal remarks about the parameters.
  [[nodiscard]] std::vector<std::string> warnings() const {
    std::vector<std::string> w;
    // Balls of squared radius eps around distinct unit vectors overlap once eps >= 1/2.
    if (epsilon_ >= 0.5) w.push_back("epsilon >= 1/2: bump supports of neighbouring vertices may overlap");
    return w;
  }

  [[nodiscard]] FieldParams with_timescales(Timescales ts) const {
    return FieldParams(hierarchy_, coeffs_, epsilon_, ts, variant_);
  }
  [[nodiscard]] FieldParams with_variant(Variant v) const {
    return FieldParams(hierarchy_, coeffs_, epsilon_, ts_, v);
  }

 private:
  Hierarchy hierarchy_;
  CoefficientSet coeffs_;
  double epsilon_;
  Timescales ts_;
  Variant variant_;
  BlockLayout layout_;
};

namespace detail {

// 1 - sum v_k^2 for one block, expanding around the largest entry so that
// blocks sitting on a unit vector do not lose digits.
inline double one_minus_norm2(std::span<const double> v, std::span<const double> vm1) {
  if (v.empty()) return 1.0;
  std::size_t m = 0;
  for (std::size_t k = 1; k < v.size(); ++k)
    if (v[k] > v[m]) m = k;
  double acc = -vm1[m] * (v[m] + 1.0);
  for (std::size_t k = 0; k < v.size(); ++k)
    if (k != m) acc -= v[k] * v[k];
  return acc;
}

inline double interaction(const Matrix& a, std::size_t i, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] != 0.0) s += a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) * v[k] * v[k];
  }
  return s;
}

// |X - e_j|^2 using the precomputed X_j - 1.
inline double distance2(std::span<const double> X, std::span<const double> Xm1, std::size_t j) {
  double z = Xm1[j] * Xm1[j];
  for (std::size_t k = 0; k < X.size(); ++k)
    if (k != j) z += X[k] * X[k];
  return z;
}

/// Growth rates (dv_c/dt) / v_c for every coordinate, given values v and v - 1.
inline void growth_rates(const FieldParams& p, std::span<const double> v, std::span<const double> vm1,
                         std::span<double> out) {
  const auto& L = p.layout();
  const auto& ts = p.timescales();
  const auto& c = p.coefficients();
  const std::size_t N = L.super_size();

  const auto X = v.subspan(0, N);
  const auto Xm1 = vm1.subspan(0, N);
  const double base = one_minus_norm2(X, Xm1);
  for (std::size_t j = 0; j < N; ++j) out[j] = ts.phi * (base + interaction(c.a, j, X));

  const bool bounded = p.variant() == Variant::HeteroclinicBounded;
  for (std::size_t j = 0; j < L.block_count(); ++j) {
    const double b = bump(distance2(X, Xm1, j), p.epsilon());
    const std::size_t off = L.block_offset(j);
    const std::size_t n = L.block_size(j);
    const auto x = v.subspan(off, n);
    const auto xm1 = vm1.subspan(off, n);
    const double decay = ts.omega * (1.0 - b);
    // Skip the active-part sums where they are multiplied by b = 0.
    const double sbase = b > 0.0 ? one_minus_norm2(x, xm1) : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double active = b > 0.0 ? ts.psi * (sbase + interaction(c.alphas[j], i, x)) * b : 0.0;
      const double g = bounded ? -xm1[i] : 1.0;
      out[off + i] = active - decay * g;
    }
  }
}

}  // namespace detail

/// Time derivative of the state s.
[[nodiscard]] inline HierState eval_field(std::span<const double> s, const FieldParams& p) {
  p.layout().check(s);
  require_finite(s, "state");
  std::vector<double> sm1(s.size());
  for (std::size_t c = 0; c < s.size(); ++c) sm1[c] = s[c] - 1.0;
  HierState out(s.size());
  detail::growth_rates(p, s, sm1, out);
  for (std::size_t c = 0; c < s.size(); ++c) out[c] = s[c] == 0.0 ? 0.0 : s[c] * out[c];
  return out;
}

/// Coordinates pinned at exactly zero (true = masked).
using ZeroMask = std::vector<bool>;

/// Values below this count as zero in the log chart's norm accumulations.
inline constexpr double kLogChartFloor = 1e-300;

namespace detail {

// Evaluates the log-chart derivative into `out` using scratch buffers; the hot path of integrate().
inline void eval_field_log_into(std::span<const double> u, const ZeroMask& mask, const FieldParams& p,
                                std::vector<double>& v, std::vector<double>& vm1, std::span<double> out) {
  const std::size_t D = u.size();
  v.resize(D);
  vm1.resize(D);
  for (std::size_t c = 0; c < D; ++c) {
    if (mask[c]) {
      v[c] = 0.0;
      vm1[c] = -1.0;
    } else {
      const double e = std::exp(u[c]);
      v[c] = e < kLogChartFloor ? 0.0 : e;
      vm1[c] = std::expm1(u[c]);
    }
  }
  growth_rates(p, v, vm1, out);
  for (std::size_t c = 0; c < D; ++c)
    if (mask[c]) out[c] = 0.0;
}

}  // namespace detail

/// Derivative of u = log(s) for unmasked coordinates; masked entries of u are ignored and get 0.
[[nodiscard]] inline HierState eval_field_log(std::span<const double> u, const ZeroMask& mask, const FieldParams& p) {
  p.layout().check(u);
  if (mask.size() != u.size()) throw Error(ErrorKind::DimensionMismatch, "mask size");
  for (std::size_t c = 0; c < u.size(); ++c) {
    if (!mask[c] && !std::isfinite(u[c])) {
      throw Error(ErrorKind::NonFiniteInput, "log coordinate " + p.layout().name(c) + " is not finite");
    }
  }
  std::vector<double> v, vm1;
  HierState out(u.size());
  detail::eval_field_log_into(u, mask, p, v, vm1, out);
  return out;
}

/// Analytic Jacobian of eval_field, row-major by flat coordinate.
[[nodiscard]] inline Matrix jacobian(std::span<const double> s, const FieldParams& p) {
  const auto& L = p.layout();
  L.check(s);
  const auto& ts = p.timescales();
  const auto& c = p.coefficients();
  const std::size_t N = L.super_size();
  const auto D = static_cast<Eigen::Index>(L.dim());
  Matrix J = Matrix::Zero(D, D);

  const auto X = s.subspan(0, N);
  double nX = 0.0;
  for (double v : X) nX += v * v;
  for (std::size_t j = 0; j < N; ++j) {
    const double R = 1.0 - nX + detail::interaction(c.a, j, X);
    const auto r = static_cast<Eigen::Index>(j);
    for (std::size_t l = 0; l < N; ++l) {
      const double dR = 2.0 * X[l] * (c.a(r, static_cast<Eigen::Index>(l)) - 1.0);
      J(r, static_cast<Eigen::Index>(l)) = ts.phi * ((j == l ? R : 0.0) + X[j] * dR);
    }
  }

  const bool bounded = p.variant() == Variant::HeteroclinicBounded;
  for (std::size_t j = 0; j < L.block_count(); ++j) {
    const double z = distance2_to_unit(X, j);
    const double b = bump(z, p.epsilon());
    const double db = bump_derivative(z, p.epsilon());
    const std::size_t off = L.block_offset(j);
    const std::size_t n = L.block_size(j);
    const auto x = s.subspan(off, n);
    const Matrix& al = c.alphas[j];
    double nx = 0.0;
    for (double v : x) nx += v * v;
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = static_cast<Eigen::Index>(off + i);
      const auto ri = static_cast<Eigen::Index>(i);
      const double S = 1.0 - nx + detail::interaction(al, i, x);
      const double g = bounded ? 1.0 - x[i] : 1.0;
      const double G = ts.psi * S * b - ts.omega * (1.0 - b) * g;
      for (std::size_t l = 0; l < n; ++l) {
        const double dS = 2.0 * x[l] * (al(ri, static_cast<Eigen::Index>(l)) - 1.0);
        const double dg = bounded && l == i ? -1.0 : 0.0;
        const double inner = ts.psi * b * dS - ts.omega * (1.0 - b) * dg;
        J(r, static_cast<Eigen::Index>(off + l)) = (i == l ? G : 0.0) + x[i] * inner;
      }
      if (db != 0.0) {
        // d/dX_m of b_j = b'(z) * 2 (X_m - delta_mj)
        const double dGdb = ts.psi * S + ts.omega * g;
        for (std::size_t m = 0; m < N; ++m) {
          const double dz = 2.0 * (X[m] - (m == j ? 1.0 : 0.0));
          J(r, static_cast<Eigen::Index>(m)) = x[i] * dGdb * db * dz;
        }
      }
    }
  }
  return J;
}

/// Label of a designed equilibrium.
struct EquilibriumLabel {
  enum class Kind { Origin, Super, Sub } kind = Kind::Origin;
  std::size_t j = 0;  // superstructure vertex (Super, Sub)
  std::size_t i = 0;  // substructure vertex (Sub)

  [[nodiscard]] std::string to_string() const {
    switch (kind) {
      case Kind::Origin: return "Origin";
      case Kind::Super: return "Super(" + std::to_string(j + 1) + ")";
      case Kind::Sub: return "Sub(" + std::to_string(j + 1) + "," + std::to_string(i + 1) + ")";
    }
    return {};
  }

  friend bool operator==(const EquilibriumLabel&, const EquilibriumLabel&) = default;
};

struct Equilibrium {
  EquilibriumLabel label;
  HierState state;
};

[[nodiscard]] inline HierState super_equilibrium_state(const BlockLayout& L, std::size_t j) {
  HierState s = L.zeros();
  s[L.super(j)] = 1.0;
  return s;
}

[[nodiscard]] inline HierState sub_equilibrium_state(const BlockLayout& L, std::size_t j, std::size_t i) {
  HierState s = super_equilibrium_state(L, j);
  s[L.sub(j, i)] = 1.0;
  return s;
}

/// Origin, every Super(j) and every Sub(j,i), in that order.
[[nodiscard]] inline std::vector<Equilibrium> designed_equilibria(const FieldParams& p) {
  const auto& L = p.layout();
  std::vector<Equilibrium> out;
  out.push_back({{EquilibriumLabel::Kind::Origin, 0, 0}, L.zeros()});
  for (std::size_t j = 0; j < L.super_size(); ++j)
    out.push_back({{EquilibriumLabel::Kind::Super, j, 0}, super_equilibrium_state(L, j)});
  for (std::size_t j = 0; j < L.block_count(); ++j)
    for (std::size_t i = 0; i < L.block_size(j); ++i)
      out.push_back({{EquilibriumLabel::Kind::Sub, j, i}, sub_equilibrium_state(L, j, i)});
  return out;
}

}  // namespace hiernet
