#pragma once
// Coefficient matrices of the simplex construction.
//
// Two indexings are in play:
//  * edge-indexed: entry (i,k) is the coefficient attached to the ordered
//    pair v_i -> v_k; positive iff that pair is an edge. Scenario files and
//    overrides use this form.
//  * field form: entry (i,k) multiplies x_k^2 in the equation for x_i.
//
// With Orientation::Eigenvalue the edge i -> k must become an unstable
// direction k at the equilibrium e_i, whose transverse eigenvalue is the
// field entry (k,i); hence field = transpose(edge-indexed). With
// Orientation::Literal the edge-indexed matrix is used as the field as-is.

#include <Eigen/Dense>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hiernet/error.hpp"
#include "hiernet/hierarchy.hpp"

namespace hiernet {

enum class Orientation { Eigenvalue, Literal };

using Matrix = Eigen::MatrixXd;

/// Field-form coefficients: `a` for the superstructure, `alphas[j]` for G_j.
struct CoefficientSet {
  Matrix a;
  std::vector<Matrix> alphas;
};

/// Per-pair replacements of the uniform c_plus / c_minus values (edge-indexed, 0-based).
struct CoefficientOverrides {
  std::map<Edge, double> super;
  std::map<std::size_t, std::map<Edge, double>> subs;  // keyed by substructure index
};

namespace detail {

inline std::vector<Violation> check_edge_indexed(const Matrix& m, const Digraph& g, const std::string& where) {
  std::vector<Violation> out;
  const auto n = static_cast<Eigen::Index>(g.size());
  if (m.rows() != n || m.cols() != n) {
    out.push_back({ErrorKind::DimensionMismatch, where, std::nullopt,
                   "coefficient matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                       ", expected " + std::to_string(n) + "x" + std::to_string(n)});
    return out;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double v = m(i, k);
      const Edge e{static_cast<std::size_t>(i), static_cast<std::size_t>(k)};
      if (i == k) {
        if (v != 0.0) out.push_back({ErrorKind::SignViolationInOverride, where, e, "diagonal entry must be 0"});
      } else if (g.has_edge(e.from, e.to)) {
        if (!(v > 0.0)) out.push_back({ErrorKind::SignViolationInOverride, where, e, "edge entry must be > 0"});
      } else if (!(v < 0.0)) {
        out.push_back({ErrorKind::SignViolationInOverride, where, e, "non-edge entry must be < 0"});
      }
    }
  }
  return out;
}

inline Matrix orient(const Matrix& edge_indexed, Orientation o) {
  return o == Orientation::Eigenvalue ? Matrix(edge_indexed.transpose()) : edge_indexed;
}

inline Matrix uniform_edge_indexed(const Digraph& g, double c_plus, double c_minus,
                                   const std::map<Edge, double>* overrides, const std::string& where) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k)
      m(i, k) = i == k ? 0.0 : (g.has_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) ? c_plus : c_minus);
  if (overrides) {
    for (const auto& [e, v] : *overrides) {
      if (e.from >= g.size() || e.to >= g.size()) {
        throw Error(ErrorKind::VertexOutOfRange, where + ": override " + format_edge(e));
      }
      m(static_cast<Eigen::Index>(e.from), static_cast<Eigen::Index>(e.to)) = v;
    }
  }
  return m;
}

[[noreturn]] inline void throw_violations(const std::vector<Violation>& v) {
  std::string msg;
  for (const auto& p : v) msg += (msg.empty() ? "" : "; ") + p.to_string();
  throw Error(v.front().kind, msg);
}

}  // namespace detail

/// Field-form coefficients from explicit edge-indexed matrices (e.g. printed tables).
inline CoefficientSet coefficients_from_matrices(const Hierarchy& h, const Matrix& super_edge_indexed,
                                                 const std::vector<Matrix>& subs_edge_indexed,
                                                 Orientation o = Orientation::Eigenvalue) {
  std::vector<Violation> problems = detail::check_edge_indexed(super_edge_indexed, h.superstructure(), "superstructure");
  if (subs_edge_indexed.size() != h.size()) {
    problems.push_back({ErrorKind::SubstructureCountMismatch, "coefficients", std::nullopt,
                        std::to_string(subs_edge_indexed.size()) + " substructure matrices for " +
                            std::to_string(h.size()) + " substructures"});
  } else {
    for (std::size_t j = 0; j < h.size(); ++j) {
      auto p = detail::check_edge_indexed(subs_edge_indexed[j], h.substructure(j), "substructure " + std::to_string(j + 1));
      problems.insert(problems.end(), p.begin(), p.end());
    }
  }
  if (!problems.empty()) detail::throw_violations(problems);

  CoefficientSet c;
  c.a = detail::orient(super_edge_indexed, o);
  for (const auto& m : subs_edge_indexed) c.alphas.push_back(detail::orient(m, o));
  return c;
}

/// Uniform coefficients: c_plus on every prescribed connection, c_minus on every
/// other off-diagonal pair, zero diagonal; overrides replace single pairs.
inline CoefficientSet build_coefficients(const Hierarchy& h, double c_plus = 1.0, double c_minus = -1.5,
                                         const CoefficientOverrides& overrides = {},
                                         Orientation o = Orientation::Eigenvalue) {
  if (!(c_plus > 0.0) || !(c_minus < 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "need c_plus > 0 > c_minus");
  }
  for (const auto& [j, m] : overrides.subs) {
    if (j >= h.size()) throw Error(ErrorKind::IndexOutOfRange, "override for substructure " + std::to_string(j + 1));
  }
  Matrix super = detail::uniform_edge_indexed(h.superstructure(), c_plus, c_minus, &overrides.super, "superstructure");
  std::vector<Matrix> subs;
  for (std::size_t j = 0; j < h.size(); ++j) {
    auto it = overrides.subs.find(j);
    subs.push_back(detail::uniform_edge_indexed(h.substructure(j), c_plus, c_minus,
                                                it == overrides.subs.end() ? nullptr : &it->second,
                                                "substructure " + std::to_string(j + 1)));
  }
  return coefficients_from_matrices(h, super, subs, o);
}

/// Inverse of the orientation map: recover the edge-indexed matrix from field form.
inline Matrix edge_indexed(const Matrix& field, Orientation o) { return detail::orient(field, o); }

}  // namespace hiernet
