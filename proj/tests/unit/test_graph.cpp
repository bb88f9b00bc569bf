#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "dk/edge_list.hpp"
#include "dk/errors.hpp"
#include "dk/graph.hpp"
#include "test_graphs.hpp"

using namespace dk;

namespace {

LoadedGraph parse(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

}  // namespace

TEST_CASE("edge list: path of three nodes") {
  const LoadedGraph g = parse("0 1\n1 2\n");
  CHECK(g.graph.num_nodes() == 3);
  CHECK(g.graph.num_edges() == 2);
  CHECK(g.graph.degree_sequence() == std::vector<std::size_t>{1, 2, 1});
}

TEST_CASE("edge list: duplicates in either orientation are dropped") {
  const LoadedGraph g = parse("0 1\n0 1\n1 0\n");
  CHECK(g.graph.num_edges() == 1);
  CHECK(g.duplicate_edges == 2);
}

TEST_CASE("edge list: comments, blank lines, CRLF, sparse labels") {
  const LoadedGraph g = parse("# header\r\n\r\n10 30\r\n30 20\n  \n7 7\n");
  // A dropped self-loop line contributes no node.
  CHECK(g.graph.num_nodes() == 3);
  CHECK(g.graph.num_edges() == 2);
  CHECK(g.self_loops == 1);
  CHECK(g.original_ids == std::vector<std::uint64_t>{10, 20, 30});
  CHECK(g.graph.has_edge(0, 2));
  CHECK(g.graph.has_edge(1, 2));
}

TEST_CASE("edge list: malformed lines report their line number") {
  for (const char* bad : {"0 1\n1 x\n", "0 1\n1 2 3\n", "0 1\n-1 2\n", "0 1\n5\n"}) {
    try {
      parse(bad);
      FAIL("accepted " << bad);
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
}

TEST_CASE("edge list: write is sorted and round-trips") {
  const Graph g = testing::chung_lu_power_law(60, 2.5, 4.0, 20.0, 3);
  std::ostringstream out;
  write_edge_list(out, g);
  const LoadedGraph back = parse(out.str());
  // Isolated nodes vanish, so compare edge sets through the labels.
  std::vector<Edge> relabeled;
  for (const Edge& e : back.graph.edges()) {
    relabeled.push_back(Edge{static_cast<NodeId>(back.original_ids[e.u]), static_cast<NodeId>(back.original_ids[e.v])});
  }
  CHECK(relabeled == g.edges());
}

TEST_CASE("from_edges rejects non-simple input") {
  CHECK_THROWS_AS(Graph::from_edges(3, std::vector<Edge>{{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edges(3, std::vector<Edge>{{0, 3}}), std::invalid_argument);
}

TEST_CASE("degree") {
  const Graph s = testing::star(4);
  CHECK(s.degree(0) == 4);
  CHECK(s.degree(1) == 1);
  CHECK(testing::paw().degree(0) == 3);
  CHECK_THROWS_AS(s.degree(5), std::out_of_range);
}

TEST_CASE("giant component") {
  SUBCASE("equal components: smallest id wins") {
    Graph g(7);
    for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}) g.add_edge(u, v);
    const ComponentExtraction gcc = giant_connected_component(g);
    CHECK(gcc.graph.num_nodes() == 3);
    CHECK(gcc.graph.num_edges() == 3);
    CHECK(gcc.original_ids == std::vector<NodeId>{0, 1, 2});
    CHECK(gcc.component_sizes == std::vector<std::size_t>{3, 3, 1});
  }
  SUBCASE("connected graph is unchanged") {
    const Graph p = testing::paw();
    CHECK(giant_connected_component(p).graph == p);
  }
  SUBCASE("empty graph") { CHECK_THROWS_AS(giant_connected_component(Graph{}), std::invalid_argument); }
}

TEST_CASE("swap_edges") {
  SUBCASE("disjoint edges, crossing A") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    CHECK(swap_edges(g, {0, 1}, {2, 3}, Crossing::kAD_CB) == SwapStatus::kApplied);
    CHECK(g.edges() == std::vector<Edge>{{0, 3}, {1, 2}});
  }
  SUBCASE("shared node would form a self-loop") {
    Graph g = testing::path(3);
    const Graph before = g;
    CHECK(swap_edges(g, {0, 1}, {1, 2}, Crossing::kAD_CB) == SwapStatus::kSelfLoop);
    CHECK(g == before);
  }
  SUBCASE("existing edge would be duplicated") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    g.add_edge(0, 3);
    const Graph before = g;
    CHECK(swap_edges(g, {0, 1}, {2, 3}, Crossing::kAD_CB) == SwapStatus::kMultiEdge);
    CHECK(g == before);
  }
  SUBCASE("missing edge") {
    Graph g = testing::path(4);
    CHECK_THROWS_AS(swap_edges(g, {0, 2}, {2, 3}, Crossing::kAD_CB), std::invalid_argument);
  }
}
