#include <doctest.h>

#include "dk/dk_json.hpp"
#include "dk/dk_series.hpp"
#include "dk/errors.hpp"
#include "dk/generators.hpp"
#include "test_graphs.hpp"

using namespace dk;

TEST_CASE("paw graph census") {
  const Graph g = testing::paw();
  const ZeroK z = extract_0k(g);
  CHECK(z.n == 4);
  CHECK(z.kbar == 2.0);
  CHECK(extract_1k(g).counts == std::map<Degree, Count>{{1, 1}, {2, 2}, {3, 1}});
  CHECK(extract_2k(g).counts == std::map<JointDegree, Count>{{{2, 3}, 2}, {{2, 2}, 1}, {{1, 3}, 1}});
  const ThreeK t = extract_3k(g);
  CHECK(t.wedges == std::map<WedgeKey, Count>{{{1, 3, 2}, 2}});
  CHECK(t.triangles == std::map<TriangleKey, Count>{{{2, 2, 3}, 1}});
}

TEST_CASE("3K of small graphs") {
  SUBCASE("K4: triangles only") {
    const ThreeK t = extract_3k(testing::complete(4));
    CHECK(t.wedges.empty());
    CHECK(t.triangles == std::map<TriangleKey, Count>{{{3, 3, 3}, 4}});
  }
  SUBCASE("five-cycle") {
    const ThreeK t = extract_3k(testing::cycle(5));
    CHECK(t.wedges == std::map<WedgeKey, Count>{{{2, 2, 2}, 5}});
    CHECK(t.triangles.empty());
  }
  SUBCASE("empty graph on five nodes") {
    const auto t = std::get<ThreeK>(count_subgraphs_bruteforce(Graph(5), 3));
    CHECK(t.wedges.empty());
    CHECK(t.triangles.empty());
    CHECK(extract_3k(Graph(5)) == t);
  }
}

TEST_CASE("fast census equals both enumeration oracles") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = testing::erdos_renyi(5 + seed % 20, 0.05 + 0.02 * static_cast<double>(seed % 20), seed);
    CAPTURE(seed);
    CHECK(extract_2k(g) == testing::matrix_census_2k(g));
    CHECK(extract_3k(g) == testing::matrix_census_3k(g));
    CHECK(DkDistribution(extract_2k(g)) == count_subgraphs_bruteforce(g, 2));
    CHECK(DkDistribution(extract_3k(g)) == count_subgraphs_bruteforce(g, 3));
  }
}

TEST_CASE("extract rejects d outside 0..3") {
  CHECK_THROWS_AS(extract(testing::paw(), 4), std::invalid_argument);
  CHECK_THROWS_AS(extract(testing::paw(), -1), std::invalid_argument);
}

TEST_CASE("projection") {
  const Graph g = testing::paw();
  CHECK(project(extract_1k(g)).kbar == 2.0);
  CHECK(project(extract_2k(g)) == extract_1k(g));
  CHECK(project(extract_2k(testing::complete(4))).counts == std::map<Degree, Count>{{3, 4}});
  CHECK(std::get<OneK>(project(DkDistribution(extract_2k(g)))) == extract_1k(g));
  CHECK_THROWS_AS(project(DkDistribution(extract_3k(g))), CapabilityError);
  CHECK_THROWS_AS(project(DkDistribution(extract_0k(g))), std::invalid_argument);
  CHECK(project(extract_3k(g), g) == extract_2k(g));
  CHECK_THROWS_AS(project(extract_3k(g), testing::complete(4)), std::invalid_argument);

  SUBCASE("isolated nodes become degree 0") {
    Graph h = testing::paw();
    h.add_node();
    CHECK(project(extract_2k(h)) == extract_1k(h));
  }
  SUBCASE("edge ends not divisible by k") {
    TwoK bad;
    bad.n = 3;
    bad.counts[{1, 2}] = 1;
    CHECK_THROWS_AS(project(bad), std::invalid_argument);
  }
}

TEST_CASE("inclusion holds on random graphs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = testing::chung_lu_power_law(200, 2.2, 5.0, 40.0, seed);
    CHECK(project(extract_2k(g)) == extract_1k(g));
    CHECK(project(extract_1k(g)).kbar == 2.0 * static_cast<double>(g.num_edges()) / 200.0);
    CHECK(project(extract_3k(g), g) == extract_2k(g));
  }
}

TEST_CASE("2K from wedge counts") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = testing::chung_lu_power_law(150, 2.3, 4.0, 30.0, seed + 100);
    TwoK expected = extract_2k(g);
    TwoK recovered = edge_counts_from_wedges(extract_3k(g));
    expected.counts.erase({1, 1});
    recovered.counts.erase({1, 1});
    CHECK(recovered.counts == expected.counts);

    const Graph gcc = giant_connected_component(g).graph;
    CHECK(infer_two_k(extract_3k(gcc)) == extract_2k(gcc));
  }
  SUBCASE("isolated (1,1) edges are recovered from the node count") {
    Graph g = testing::paw();
    const NodeId a = g.add_node();
    const NodeId b = g.add_node();
    g.add_edge(a, b);
    CHECK(infer_two_k(extract_3k(g)) == extract_2k(g));
  }
}

TEST_CASE("distance") {
  TwoK a, b;
  a.counts[{1, 2}] = 3;
  b.counts[{1, 2}] = 1;
  CHECK(distance(a, a) == 0.0);
  CHECK(distance(a, b) == 4.0);
  CHECK(count_distance(a, b) == 4);

  ThreeK x, y;
  x.wedges[{1, 2, 1}] = 2;
  y.wedges[{1, 2, 1}] = 1;
  x.triangles[{2, 2, 2}] = 1;
  CHECK(distance(x, y) == 2.0);

  CHECK_THROWS_AS(distance(DkDistribution(a), DkDistribution(x)), std::invalid_argument);
  CHECK(distance(ZeroK{4, 2.0}, ZeroK{4, 3.5}) == 2.25);
}

TEST_CASE("JSON round trip is byte-stable") {
  const Graph g = testing::chung_lu_power_law(120, 2.3, 4.0, 25.0, 9);
  for (int d = 0; d <= 3; ++d) {
    const DkDistribution dist = extract(g, d);
    const std::string text = to_json(dist);
    CHECK(distribution_from_json(text) == dist);
    CHECK(to_json(distribution_from_json(text)) == text);
  }
  CHECK_THROWS_AS(distribution_from_json("{\"d\": 2, \"n\": 4, \"jdd_counts\": {\"3,2\": 1}}"), ParseError);
  CHECK_THROWS_AS(distribution_from_json("{\"d\": 7}"), ParseError);
  CHECK_THROWS_AS(distribution_from_json("not json"), ParseError);
}

TEST_CASE("multigraph census counts loops twice") {
  const std::vector<Edge> raw{{0, 0}, {0, 1}, {0, 1}};
  CHECK(multigraph_1k(2, raw).counts == std::map<Degree, Count>{{2, 1}, {4, 1}});
  CHECK(multigraph_2k(2, raw).counts == std::map<JointDegree, Count>{{{4, 4}, 1}, {{2, 4}, 2}});
}
