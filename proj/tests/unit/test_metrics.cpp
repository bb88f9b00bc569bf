#include <doctest.h>

#include <cmath>

#include "dk/metrics.hpp"
#include "dk/report.hpp"
#include "test_graphs.hpp"

using namespace dk;
using doctest::Approx;

TEST_CASE("distance distribution") {
  SUBCASE("triangle") {
    const DistanceStats s = distance_distribution(testing::complete(3));
    CHECK(s.distribution.at(0) == Approx(1.0 / 3));
    CHECK(s.distribution.at(1) == Approx(2.0 / 3));
    CHECK(s.mean == 1.0);
    CHECK(s.stddev == 0.0);
  }
  SUBCASE("path of three") {
    const DistanceStats s = distance_distribution(testing::path(3));
    CHECK(s.pair_counts == std::vector<std::uint64_t>{3, 4, 2});
    CHECK(s.distribution.at(2) == Approx(2.0 / 9));
    CHECK(s.mean == Approx(8.0 / 6));
  }
  SUBCASE("sums to one and ignores the worker count") {
    const Graph g = giant_connected_component(testing::chung_lu_power_law(300, 2.3, 5, 40, 1)).graph;
    const DistanceStats one = distance_distribution(g, 1);
    const DistanceStats four = distance_distribution(g, 4);
    double total = 0.0;
    for (const auto& [x, p] : one.distribution) total += p;
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK(one.mean == four.mean);
    CHECK(one.stddev == four.stddev);
  }
  SUBCASE("disconnected input") { CHECK_THROWS_AS(distance_distribution(Graph(3)), std::invalid_argument); }
}

TEST_CASE("betweenness") {
  SUBCASE("star") {
    const Betweenness b = betweenness(testing::star(5));
    CHECK(b.node[0] == Approx(20.0));
    for (NodeId v = 1; v <= 5; ++v) CHECK(b.node[v] == 0.0);
  }
  SUBCASE("path") { CHECK(betweenness(testing::path(3)).node[1] == Approx(2.0)); }
  SUBCASE("matches path enumeration") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Graph g = giant_connected_component(testing::erdos_renyi(30, 0.12, seed)).graph;
      const Betweenness fast = betweenness(g, 2);
      const testing::PathBetweenness slow = testing::path_enumeration_betweenness(g);
      for (NodeId v = 0; v < g.num_nodes(); ++v) CHECK(std::abs(fast.node[v] - slow.node[v]) < 1e-9);
      for (std::size_t i = 0; i < fast.edges.size(); ++i) {
        CHECK(std::abs(fast.edge[i] - slow.edge.at(fast.edges[i])) < 1e-9);
      }
    }
  }
  SUBCASE("worker count does not change bits") {
    const Graph g = giant_connected_component(testing::chung_lu_power_law(200, 2.3, 5, 40, 2)).graph;
    CHECK(betweenness(g, 1).node == betweenness(g, 3).node);
  }
}

TEST_CASE("clustering") {
  const Clustering k4 = clustering(testing::complete(4));
  CHECK(k4.by_degree.at(3) == 1.0);
  CHECK(k4.mean == 1.0);
  const Clustering p = clustering(testing::paw());
  CHECK(p.per_node[0] == Approx(1.0 / 3));
  CHECK(p.per_node[1] == 1.0);
  CHECK(p.per_node[3] == 0.0);
  CHECK(p.mean == Approx((1.0 / 3 + 2.0) / 4));
}

TEST_CASE("assortativity") {
  for (std::size_t leaves : {3, 4, 10}) CHECK(std::abs(*assortativity(testing::star(leaves)) + 1.0) < 1e-12);
  CHECK_FALSE(assortativity(testing::complete(4)).has_value());
  CHECK_THROWS_AS(assortativity(Graph(3)), std::invalid_argument);
}

TEST_CASE("likelihoods") {
  CHECK(likelihood(testing::path(2)) == 1);
  CHECK(likelihood(testing::paw()) == 19);
  CHECK(likelihood(testing::complete(3)) == 12);
  CHECK(second_order_likelihood(testing::paw()) == 4);
  CHECK(second_order_likelihood(testing::complete(4)) == 0);
  CHECK(second_order_likelihood(testing::path(3)) == 1);
}

TEST_CASE("normalized Laplacian") {
  SUBCASE("K2") {
    const LaplacianSpectrum s = laplacian_spectrum(testing::path(2), true);
    CHECK(std::abs(s.eigenvalues[0]) < 1e-12);
    CHECK(s.eigenvalues[1] == Approx(2.0));
    CHECK(s.lambda1 == Approx(2.0));
    CHECK(s.lambda_max == Approx(2.0));
  }
  SUBCASE("K3") {
    const LaplacianSpectrum s = laplacian_spectrum(testing::complete(3), true);
    CHECK(std::abs(s.eigenvalues[0]) < 1e-12);
    CHECK(s.eigenvalues[1] == Approx(1.5));
    CHECK(s.eigenvalues[2] == Approx(1.5));
  }
  SUBCASE("disconnected") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    CHECK_THROWS_AS(laplacian_spectrum(g), std::invalid_argument);
  }
}

TEST_CASE("full report") {
  const MetricsReport k4 = full_report(testing::complete(4));
  CHECK(k4.kbar == 3.0);
  CHECK(k4.cbar == 1.0);
  CHECK(k4.dbar == 1.0);
  CHECK(k4.sigma_d == 0.0);
  CHECK_FALSE(k4.r.has_value());

  const MetricsReport paw = full_report(testing::paw());
  CHECK(paw.kbar == 2.0);
  CHECK(paw.s == 19);
  CHECK(paw.s2 == 4);
  CHECK(paw.cbar == Approx(0.5833333333));

  SUBCASE("measured on the GCC") {
    Graph g = testing::paw();
    const NodeId a = g.add_node();
    const NodeId b = g.add_node();
    g.add_edge(a, b);
    const MetricsReport r = full_report(g);
    CHECK(r.nodes == 6);
    CHECK(r.gcc_nodes == 4);
    CHECK(r.s == 19);
  }
  SUBCASE("json has nulls for undefined values") {
    CHECK(report_to_json(k4).find("\"r\": null") != std::string::npos);
  }
}
