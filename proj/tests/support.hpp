#pragma once
// Shared fixtures for the test binaries: the two bundled setups built by hand
// (independently of the scenario loader), cached long runs, and a direct
// transcription of the vector field used as an oracle.

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hiernet/analysis.hpp"
#include "hiernet/coefficients.hpp"
#include "hiernet/field.hpp"
#include "hiernet/hierarchy.hpp"
#include "hiernet/integrator.hpp"
#include "hiernet/scenario.hpp"

namespace testsupport {

using namespace hiernet;

inline std::string scenario_path(const std::string& name) { return std::string(HIERNET_SCENARIO_DIR) + "/" + name; }

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

inline EdgeList graph(std::size_t n, std::initializer_list<std::pair<int, int>> one_based) {
  EdgeList g{n, {}};
  for (auto [a, b] : one_based) g.edges.push_back({static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1)});
  return g;
}

inline EdgeList cycle3() { return graph(3, {{1, 2}, {2, 3}, {3, 1}}); }
inline EdgeList reversed3() { return graph(3, {{1, 3}, {3, 2}, {2, 1}}); }
inline EdgeList kirk_silber() { return graph(4, {{1, 2}, {2, 3}, {2, 4}, {3, 1}, {4, 1}}); }
inline EdgeList cycle4() { return graph(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}}); }
inline EdgeList reversed4() { return graph(4, {{1, 4}, {4, 3}, {3, 2}, {2, 1}}); }

// Printed coefficient tables (edge-indexed: row i, column k belongs to i -> k).
inline Matrix A3() { return mat({{0, 1, -1.5}, {-1.5, 0, 1}, {1, -1.5, 0}}); }
inline Matrix alpha_cycle3() { return mat({{0, 1, -1.1}, {-1.1, 0, 1}, {1, -1.1, 0}}); }
inline Matrix alpha_reversed3() { return mat({{0, -1.1, 1}, {1, 0, -1.1}, {-1.1, 1, 0}}); }
inline Matrix A_kirk_silber() { return mat({{0, 1, -1.5, -1.5}, {-1.5, 0, 0.5, 2}, {1, -1.5, 0, -1.5}, {1, -1.5, -1.5, 0}}); }
inline Matrix alpha_cycle4() {
  return mat({{0, 1, -1.01, -1.1}, {-1.01, 0, 1, -1.01}, {-1.01, -1.01, 0, 1}, {1, -1.01, -1.01, 0}});
}
inline Matrix alpha_reversed4() {
  return mat({{0, -1.01, -1.01, 1}, {1, 0, -1.01, -1.01}, {-1.01, 1, 0, -1.01}, {-1.01, -1.01, 1, 0}});
}

struct Setup {
  HierarchyInput hierarchy;
  Matrix super_edge;
  std::vector<Matrix> subs_edge;
  HierState initial;
  Timescales ts{0.1, 200.0, 0.05};
  double epsilon = 0.2;

  [[nodiscard]] FieldParams params(Orientation o = Orientation::Eigenvalue, Variant v = Variant::Standard) const {
    const auto h = Hierarchy::make(hierarchy);
    return FieldParams(h, coefficients_from_matrices(h, super_edge, subs_edge, o), epsilon, ts, v);
  }
};

inline Setup example1() {
  Setup s;
  s.hierarchy = {cycle3(), {cycle3(), reversed3(), kirk_silber()}};
  s.super_edge = A3();
  s.subs_edge = {alpha_cycle3(), alpha_reversed3(), A_kirk_silber()};
  s.initial = {0.9, 0.1, 0.1, 0.999, 0.1, 0.1, 0.1, 0.999, 0.1, 0.9, 0.1, 0.3, 1e-6};
  return s;
}

inline Setup example2() {
  Setup s;
  s.hierarchy = {kirk_silber(), {cycle3(), reversed3(), cycle4(), reversed4()}};
  s.super_edge = A_kirk_silber();
  s.subs_edge = {alpha_cycle3(), alpha_reversed3(), alpha_cycle4(), alpha_reversed4()};
  s.initial = {0.9, 0.1, 0.3, 1e-6, 0.999, 0.1, 0.1, 0.999, 0.1, 0.1, 0.999, 0.1, 0.1, 0.1, 0.999, 0.1, 0.1, 0.1};
  return s;
}

inline IntegratorConfig long_run(double sample_dt = 0.005) {
  IntegratorConfig c;
  c.t_end = 2000.0;
  c.sample_dt = sample_dt;
  return c;
}

/// Long runs are expensive; each binary integrates each setup at most once per key.
inline const Trajectory& cached_run(const std::string& key, const Setup& s, const IntegratorConfig& cfg,
                                    Orientation o = Orientation::Eigenvalue) {
  static std::map<std::string, Trajectory> cache;
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, integrate(s.initial, s.params(o), cfg)).first;
  return it->second;
}

inline const Trajectory& example1_run() { return cached_run("ex1", example1(), long_run()); }
inline const Trajectory& example2_run() { return cached_run("ex2", example2(), long_run()); }

// Direct transcription of the field from the edge-indexed tables: the growth
// of x_i collects M(k, i) x_k^2 over the other coordinates k, the bump is the
// quotient form of the transition function, and norms are plain sums.
struct Oracle {
  std::vector<std::size_t> sizes;  // n_1..n_N
  Matrix super_edge;
  std::vector<Matrix> subs_edge;
  double eps, phi, psi, omega;
  bool bounded = false;

  static long double bump_quotient(long double z, long double e) {
    if (z <= 0) return 1;
    if (z >= e) return 0;
    const long double p = std::exp(-e / z);
    const long double q = std::exp(-e / (e - z));
    return 1 - p / (p + q);
  }

  std::vector<double> operator()(const std::vector<double>& s) const {
    const std::size_t N = sizes.size();
    std::vector<double> out(s.size());
    long double nX = 0;
    for (std::size_t j = 0; j < N; ++j) nX += (long double)s[j] * s[j];
    for (std::size_t j = 0; j < N; ++j) {
      long double acc = 1 - nX;
      for (std::size_t k = 0; k < N; ++k) acc += (long double)super_edge((Eigen::Index)k, (Eigen::Index)j) * s[k] * s[k];
      out[j] = (double)(phi * s[j] * acc);
    }
    std::size_t off = N;
    for (std::size_t j = 0; j < N; ++j) {
      long double z = 0;
      for (std::size_t k = 0; k < N; ++k) {
        const long double d = (long double)s[k] - (k == j ? 1 : 0);
        z += d * d;
      }
      const long double b = bump_quotient(z, eps);
      long double nx = 0;
      for (std::size_t i = 0; i < sizes[j]; ++i) nx += (long double)s[off + i] * s[off + i];
      for (std::size_t i = 0; i < sizes[j]; ++i) {
        long double acc = 1 - nx;
        for (std::size_t k = 0; k < sizes[j]; ++k)
          acc += (long double)subs_edge[j]((Eigen::Index)k, (Eigen::Index)i) * s[off + k] * s[off + k];
        const long double g = bounded ? 1 - (long double)s[off + i] : 1;
        out[off + i] = (double)(s[off + i] * (psi * acc * b - omega * (1 - b) * g));
      }
      off += sizes[j];
    }
    return out;
  }

  static Oracle from(const Setup& s, bool bounded = false) {
    Oracle o;
    for (const auto& g : s.hierarchy.substructures) o.sizes.push_back(g.n_vertices);
    o.super_edge = s.super_edge;
    o.subs_edge = s.subs_edge;
    o.eps = s.epsilon;
    o.phi = s.ts.phi;
    o.psi = s.ts.psi;
    o.omega = s.ts.omega;
    o.bounded = bounded;
    return o;
  }
};

inline std::vector<double> random_state(std::mt19937_64& rng, std::size_t dim, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> s(dim);
  for (auto& v : s) v = u(rng);
  return s;
}

/// Central-difference Jacobian of eval_field.
inline Matrix fd_jacobian(const std::vector<double>& s, const FieldParams& p, double h = 1e-6) {
  const auto D = static_cast<Eigen::Index>(s.size());
  Matrix J(D, D);
  for (Eigen::Index c = 0; c < D; ++c) {
    auto a = s, b = s;
    a[(std::size_t)c] += h;
    b[(std::size_t)c] -= h;
    const auto fa = eval_field(a, p);
    const auto fb = eval_field(b, p);
    for (Eigen::Index r = 0; r < D; ++r) J(r, c) = (fa[(std::size_t)r] - fb[(std::size_t)r]) / (2 * h);
  }
  return J;
}

inline std::vector<std::size_t> one_based(const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out;
  for (auto x : v) out.push_back(x + 1);
  return out;
}

}  // namespace testsupport
