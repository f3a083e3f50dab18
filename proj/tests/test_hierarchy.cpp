#include <catch_amalgamated.hpp>

#include "hiernet/coefficients.hpp"
#include "hiernet/hierarchy.hpp"
#include "hiernet/state.hpp"
#include "support.hpp"

using namespace hiernet;
using namespace testsupport;

namespace {

Digraph dg(const EdgeList& g) { return Digraph::from_edges(g); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("digraph from edges: 3-cycle adjacency") {
  const auto d = dg(cycle3());
  CHECK(d.adjacency() == std::vector<std::vector<int>>{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
}

TEST_CASE("digraph from edges: edgeless") {
  const auto d = Digraph::from_edges(2, {});
  CHECK(d.adjacency() == std::vector<std::vector<int>>{{0, 0}, {0, 0}});
  CHECK(d.out_neighbors(0).empty());
  CHECK(d.out_neighbors(1).empty());
}

TEST_CASE("digraph invariants are enforced") {
  CHECK(kind_of([] { (void)Digraph::from_edges(2, {{0, 1}, {1, 0}}); }) == ErrorKind::TwoCycle);
  CHECK(kind_of([] { (void)Digraph::from_edges(2, {{0, 0}}); }) == ErrorKind::SelfLoop);
  CHECK(kind_of([] { (void)Digraph::from_edges(2, {{0, 1}, {0, 1}}); }) == ErrorKind::DuplicateEdge);
  CHECK(kind_of([] { (void)Digraph::from_edges(2, {{0, 2}}); }) == ErrorKind::VertexOutOfRange);
}

TEST_CASE("two-cycle is reported once with sorted endpoints") {
  const auto v = check_edge_list({3, {{1, 0}, {0, 1}, {1, 2}}}, "g");
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ErrorKind::TwoCycle);
  CHECK(v[0].to_string() == "g: TwoCycle (1,2)");
}

TEST_CASE("adjacency of the Kirk-Silber and reversed cycle digraphs") {
  CHECK(dg(kirk_silber()).adjacency() ==
        std::vector<std::vector<int>>{{0, 1, 0, 0}, {0, 0, 1, 1}, {1, 0, 0, 0}, {1, 0, 0, 0}});
  CHECK(dg(reversed3()).adjacency() == std::vector<std::vector<int>>{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
}

TEST_CASE("out-neighbours") {
  CHECK(dg(kirk_silber()).out_neighbors(1) == std::vector<std::size_t>{2, 3});
  CHECK(dg(cycle3()).out_neighbors(2) == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(dg(cycle3()).out_neighbors(3), Error);
}

TEST_CASE("edges are stored sorted; equality ignores input order") {
  const auto a = Digraph::from_edges(3, {{2, 0}, {0, 1}, {1, 2}});
  const auto b = dg(cycle3());
  CHECK(a == b);
  CHECK(a.edges().front() == Edge{0, 1});
}

TEST_CASE("validate_hierarchy") {
  SECTION("example hierarchy is valid") { CHECK(validate_hierarchy(example1().hierarchy).empty()); }
  SECTION("substructure count mismatch") {
    HierarchyInput h{cycle3(), {cycle3(), cycle3()}};
    const auto v = validate_hierarchy(h);
    REQUIRE(!v.empty());
    CHECK(v[0].kind == ErrorKind::SubstructureCountMismatch);
  }
  SECTION("a 2-cycle in G_2 is pinpointed") {
    auto h = example1().hierarchy;
    h.substructures[1] = graph(3, {{1, 2}, {2, 1}});
    const auto v = validate_hierarchy(h);
    REQUIRE(v.size() == 1);
    CHECK(v[0].where == "substructure 2");
    CHECK(v[0].to_string() == "substructure 2: TwoCycle (1,2)");
    CHECK_THROWS_AS(Hierarchy::make(h), Error);
  }
}

TEST_CASE("block layout addresses and names") {
  const BlockLayout L(Hierarchy::make(example1().hierarchy));
  CHECK(L.dim() == 13);
  CHECK(L.block_offset(2) == 9);
  CHECK(L.sub(2, 3) == 12);
  CHECK(L.name(0) == "X1");
  CHECK(L.name(12) == "x3_4");
  CHECK(L.block_of(2) == -1);
  CHECK(L.block_of(6) == 1);
  CHECK_THROWS_AS(L.sub(0, 3), Error);
  CHECK_THROWS_AS(L.check(std::vector<double>(12)), Error);
}

TEST_CASE("uniform coefficients on a 3-cycle") {
  const auto h = Hierarchy::make({cycle3(), {cycle3(), cycle3(), cycle3()}});
  const auto c = build_coefficients(h, 1.0, -1.5);
  const Matrix edge = edge_indexed(c.a, Orientation::Eigenvalue);
  CHECK((edge.array() == A3().array()).all());
  for (Eigen::Index i = 0; i < 3; ++i) {
    CHECK(edge(i, i) == 0.0);
    CHECK((edge.row(i).array() == 1.0).count() == 1);
    CHECK((edge.col(i).array() == -1.5).count() == 1);
  }
}

TEST_CASE("edgeless digraph gets only negative couplings") {
  const auto h = Hierarchy::make({EdgeList{2, {}}, {EdgeList{1, {}}, EdgeList{1, {}}}});
  const auto c = build_coefficients(h, 1.0, -1.0);
  CHECK((c.a.array() == mat({{0, -1}, {-1, 0}}).array()).all());
}

TEST_CASE("Kirk-Silber overrides reproduce the printed table") {
  const auto h = Hierarchy::make({cycle3(), {cycle3(), reversed3(), kirk_silber()}});
  CoefficientOverrides o;
  o.subs[2] = {{Edge{1, 2}, 0.5}, {Edge{1, 3}, 2.0}};
  const auto c = build_coefficients(h, 1.0, -1.5, o);
  const Matrix edge = edge_indexed(c.alphas[2], Orientation::Eigenvalue);
  CHECK((edge.array() == A_kirk_silber().array()).all());
}

TEST_CASE("orientation switch maps edge-indexed tables into the field") {
  const auto h = Hierarchy::make(example1().hierarchy);
  const auto e = coefficients_from_matrices(h, A3(), {alpha_cycle3(), alpha_reversed3(), A_kirk_silber()},
                                            Orientation::Eigenvalue);
  const auto l = coefficients_from_matrices(h, A3(), {alpha_cycle3(), alpha_reversed3(), A_kirk_silber()},
                                            Orientation::Literal);
  CHECK((e.a.array() == A3().transpose().array()).all());
  CHECK((l.a.array() == A3().array()).all());
  CHECK((edge_indexed(l.alphas[2], Orientation::Literal).array() == A_kirk_silber().array()).all());
}

TEST_CASE("sign violations in overrides are rejected") {
  const auto h = Hierarchy::make({cycle3(), {cycle3(), cycle3(), cycle3()}});
  CoefficientOverrides o;
  o.super[Edge{0, 1}] = -0.5;  // an edge must stay positive
  CHECK(kind_of([&] { (void)build_coefficients(h, 1.0, -1.5, o); }) == ErrorKind::SignViolationInOverride);
  CoefficientOverrides o2;
  o2.super[Edge{0, 2}] = 0.5;  // a non-edge must stay negative
  CHECK(kind_of([&] { (void)build_coefficients(h, 1.0, -1.5, o2); }) == ErrorKind::SignViolationInOverride);
  CHECK_THROWS_AS(build_coefficients(h, -1.0, -1.5), Error);
}
