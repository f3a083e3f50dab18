#pragma once
// Directed graphs without 1- and 2-cycles, and two-level collections of them.
//
// Vertices are 0-based here. The 1-based labels v_1..v_n used in reports and
// scenario files are converted at the I/O boundary (see format_edge).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hiernet/error.hpp"

namespace hiernet {

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;

  friend constexpr bool operator==(const Edge&, const Edge&) = default;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// "(i,k)" with 1-based labels.
inline std::string format_edge(const Edge& e) {
  return "(" + std::to_string(e.from + 1) + "," + std::to_string(e.to + 1) + ")";
}

/// One problem found while validating an edge list or a hierarchy.
struct Violation {
  ErrorKind kind;
  std::string where;  // "superstructure", "substructure 2", ...
  std::optional<Edge> edge;
  std::string detail;

  [[nodiscard]] std::string to_string() const {
    std::string s = where.empty() ? std::string() : where + ": ";
    s += hiernet::to_string(kind);
    if (edge) s += " " + format_edge(*edge);
    if (!detail.empty()) s += " " + detail;
    return s;
  }
};

/// Unvalidated graph description, as read from input.
struct EdgeList {
  std::size_t n_vertices = 0;
  std::vector<Edge> edges;

  friend bool operator==(const EdgeList&, const EdgeList&) = default;
};

/// Lists every violation of the digraph invariants in `g`. Empty means valid.
inline std::vector<Violation> check_edge_list(const EdgeList& g, const std::string& where = {}) {
  std::vector<Violation> out;
  if (g.n_vertices == 0) {
    out.push_back({ErrorKind::VertexOutOfRange, where, std::nullopt, "graph has no vertices"});
  }
  std::set<Edge> seen;
  for (const Edge& e : g.edges) {
    if (e.from >= g.n_vertices || e.to >= g.n_vertices) {
      out.push_back({ErrorKind::VertexOutOfRange, where, e,
                     "(graph has " + std::to_string(g.n_vertices) + " vertices)"});
      continue;
    }
    if (e.from == e.to) {
      out.push_back({ErrorKind::SelfLoop, where, e, {}});
      continue;
    }
    if (!seen.insert(e).second) {
      out.push_back({ErrorKind::DuplicateEdge, where, e, {}});
      continue;
    }
    // Report each 2-cycle once, at its second edge.
    if (seen.contains(Edge{e.to, e.from})) {
      out.push_back({ErrorKind::TwoCycle, where, Edge{std::min(e.from, e.to), std::max(e.from, e.to)},
                     {}});
    }
  }
  return out;
}

/// A validated digraph: no self loops, no 2-cycles, no duplicate edges.
class Digraph {
 public:
  Digraph() = default;

  /// Throws Error with the kind of the first violation found.
  static Digraph from_edges(std::size_t n_vertices, std::vector<Edge> edges) {
    EdgeList raw{n_vertices, std::move(edges)};
    auto problems = check_edge_list(raw);
    if (!problems.empty()) {
      std::string msg;
      for (const auto& v : problems) msg += (msg.empty() ? "" : "; ") + v.to_string();
      throw Error(problems.front().kind, msg);
    }
    Digraph d;
    d.n_ = n_vertices;
    d.edges_ = std::move(raw.edges);
    std::sort(d.edges_.begin(), d.edges_.end());
    d.adj_.assign(n_vertices * n_vertices, 0);
    for (const Edge& e : d.edges_) d.adj_[e.from * n_vertices + e.to] = 1;
    return d;
  }

  static Digraph from_edges(const EdgeList& g) { return from_edges(g.n_vertices, g.edges); }

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }

  [[nodiscard]] bool has_edge(std::size_t i, std::size_t k) const {
    return i < n_ && k < n_ && adj_[i * n_ + k] != 0;
  }

  /// Row-major n x n 0/1 matrix, A[i][k] = 1 iff i -> k.
  [[nodiscard]] std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> a(n_, std::vector<int>(n_, 0));
    for (const Edge& e : edges_) a[e.from][e.to] = 1;
    return a;
  }

  [[nodiscard]] std::vector<std::size_t> out_neighbors(std::size_t i) const {
    if (i >= n_) {
      throw Error(ErrorKind::VertexOutOfRange,
                  "vertex " + std::to_string(i + 1) + " of " + std::to_string(n_));
    }
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < n_; ++k)
      if (adj_[i * n_ + k]) out.push_back(k);
    return out;
  }

  [[nodiscard]] EdgeList edge_list() const { return {n_, edges_}; }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> adj_;
};

/// Unvalidated two-level collection: superstructure plus one graph per vertex.
struct HierarchyInput {
  EdgeList superstructure;
  std::vector<EdgeList> substructures;

  friend bool operator==(const HierarchyInput&, const HierarchyInput&) = default;
};

inline std::vector<Violation> validate_hierarchy(const HierarchyInput& h) {
  auto out = check_edge_list(h.superstructure, "superstructure");
  if (h.substructures.size() != h.superstructure.n_vertices) {
    out.push_back({ErrorKind::SubstructureCountMismatch, "hierarchy", std::nullopt,
                   "superstructure has " + std::to_string(h.superstructure.n_vertices) +
                       " vertices but " + std::to_string(h.substructures.size()) +
                       " substructures were given"});
  }
  for (std::size_t j = 0; j < h.substructures.size(); ++j) {
    auto sub = check_edge_list(h.substructures[j], "substructure " + std::to_string(j + 1));
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

/// Validated hierarchy (superstructure Gamma and substructures G_1..G_N).
class Hierarchy {
 public:
  Hierarchy() = default;

  static Hierarchy make(const HierarchyInput& in) {
    auto problems = validate_hierarchy(in);
    if (!problems.empty()) {
      std::string msg;
      for (const auto& v : problems) msg += (msg.empty() ? "" : "; ") + v.to_string();
      throw Error(problems.front().kind, msg);
    }
    Hierarchy h;
    h.super_ = Digraph::from_edges(in.superstructure);
    for (const auto& g : in.substructures) h.subs_.push_back(Digraph::from_edges(g));
    return h;
  }

  [[nodiscard]] const Digraph& superstructure() const noexcept { return super_; }
  [[nodiscard]] const std::vector<Digraph>& substructures() const noexcept { return subs_; }
  [[nodiscard]] const Digraph& substructure(std::size_t j) const { return subs_.at(j); }
  [[nodiscard]] std::size_t size() const noexcept { return super_.size(); }

  [[nodiscard]] HierarchyInput input() const {
    HierarchyInput in{super_.edge_list(), {}};
    for (const auto& g : subs_) in.substructures.push_back(g.edge_list());
    return in;
  }

  friend bool operator==(const Hierarchy&, const Hierarchy&) = default;

 private:
  Digraph super_;
  std::vector<Digraph> subs_;
};

}  // namespace hiernet
