#include <doctest.h>

#include <cmath>
#include <limits>

#include "dk/errors.hpp"
#include "dk/metrics.hpp"
#include "dk/rewiring.hpp"
#include "test_graphs.hpp"

using namespace dk;

namespace {

Graph applied(Graph g, const Move& m) {
  for (int i = 0; i < m.arity; ++i) g.remove_edge(m.removed[i].u, m.removed[i].v);
  for (int i = 0; i < m.arity; ++i) g.add_edge(m.added[i].u, m.added[i].v);
  return g;
}

std::vector<std::int64_t> triangles_per_node(const Graph& g) {
  std::vector<std::int64_t> t(g.num_nodes(), 0);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const auto nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) t[v] += g.has_edge(nb[i], nb[j]);
    }
  }
  return t;
}

// Swaps found by trying both crossings of every edge pair through the
// graph's own swap API, filtered by full re-extraction at level d.
InitialRewirings enumerate_swaps(const Graph& g, int d) {
  InitialRewirings out;
  const DkDistribution before = extract(g, d);
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      for (Crossing mode : {Crossing::kAD_CB, Crossing::kAC_BD}) {
        Graph h = g;
        if (swap_edges(h, edges[i], edges[j], mode) != SwapStatus::kApplied) continue;
        if (extract(h, d) != before) continue;
        ++out.total;
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("local census delta equals full recomputation") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph start = testing::close_triangles(testing::chung_lu_power_law(120, 2.3, 5.0, 30.0, seed), 60, seed);
    RewiringChain chain(start, 1, seed);
    int checked = 0;
    while (checked < 150) {
      auto move = chain.propose();
      if (!move) continue;
      const Graph& before = chain.graph();
      const Graph after = applied(before, *move);
      const CensusDelta& delta = chain.delta(*move, true);

      const TwoK b2 = extract_2k(before), a2 = extract_2k(after);
      std::map<JointDegree, std::int64_t> expect2;
      for (const auto& [k, c] : a2.counts) expect2[k] += static_cast<std::int64_t>(c);
      for (const auto& [k, c] : b2.counts) expect2[k] -= static_cast<std::int64_t>(c);
      std::int64_t nonzero2 = 0;
      for (const auto& [k, c] : expect2) nonzero2 += c != 0;
      CHECK(static_cast<std::int64_t>(delta.joint.size()) == nonzero2);

      // Distance to the "before" census must equal the squared size of the delta.
      DistanceTracker tracker(before, extract_3k(before));
      CHECK(tracker.value() == 0);
      CHECK(static_cast<std::uint64_t>(tracker.change(delta)) == count_distance(extract_3k(after), extract_3k(before)));
      DistanceTracker tracker2(before, b2);
      CHECK(static_cast<std::uint64_t>(tracker2.change(delta)) == count_distance(a2, b2));

      const auto tb = triangles_per_node(before);
      const auto ta = triangles_per_node(after);
      std::vector<std::int64_t> diff(tb.size(), 0);
      for (const auto& [v, d] : delta.node_triangles) diff[v] = d;
      for (std::size_t v = 0; v < tb.size(); ++v) CHECK(ta[v] - tb[v] == diff[v]);

      chain.apply(*move);
      CHECK(chain.graph() == after);
      ++checked;
    }
  }
}

TEST_CASE("chain preserves its level") {
  for (int level = 0; level <= 3; ++level) {
    const Graph start = testing::chung_lu_power_law(200, 2.2, 4.0, 40.0, 11 + level);
    const DkDistribution reference = extract(start, level);
    RewiringChain chain(start, level, 5);
    std::size_t accepted = 0;
    for (std::size_t step = 0; step < 40000; ++step) {
      if (auto move = chain.propose()) {
        chain.apply(*move);
        ++accepted;
      }
      if (step % 5000 == 0) CHECK(extract(chain.graph(), level) == reference);
    }
    CAPTURE(level);
    CHECK(accepted > 0);
    CHECK(extract(chain.graph(), level) == reference);
    CHECK(chain.graph().num_edges() == start.num_edges());
    CHECK(Graph::from_edges(start.num_nodes(), chain.edge_array()) == chain.graph());
  }
}

TEST_CASE("chain rejects degenerate input") {
  CHECK_THROWS_AS(RewiringChain(testing::path(2), 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(RewiringChain(testing::path(4), 4, 0), std::invalid_argument);
}

TEST_CASE("leaf exchange between (1,k) and (1,k') edges preserves every level") {
  Graph g(9);
  for (NodeId v = 2; v < 5; ++v) g.add_edge(0, v);
  for (NodeId v = 5; v < 9; ++v) g.add_edge(1, v);
  g.add_edge(0, 1);
  Graph h = g;
  REQUIRE(swap_edges(h, {0, 2}, {1, 5}, Crossing::kAD_CB) == SwapStatus::kApplied);
  for (int d = 0; d <= 3; ++d) CHECK(extract(h, d) == extract(g, d));
}

TEST_CASE("initial rewiring counts") {
  SUBCASE("two disjoint edges") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    const InitialRewirings c = census_initial_rewirings(g, 1);
    CHECK(c.total == 2);
    CHECK(c.isomorphic == 2);
    CHECK(count_initial_rewirings(g, 1, true) == 0);
  }
  SUBCASE("triangle has none") {
    for (int d = 1; d <= 3; ++d) CHECK(count_initial_rewirings(testing::complete(3), d, false) == 0);
  }
  SUBCASE("level 0") {
    const Graph g = testing::paw();
    CHECK(count_initial_rewirings(g, 0, false) == 4 * (6 - 4));
  }
  SUBCASE("matches enumeration through swap_edges") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const Graph g = testing::close_triangles(testing::chung_lu_power_law(40, 2.3, 3.5, 12.0, seed), 8, seed);
      for (int d = 1; d <= 3; ++d) {
        CAPTURE(d);
        CHECK(census_initial_rewirings(g, d).total == enumerate_swaps(g, d).total);
      }
    }
  }
}

TEST_CASE("randomize") {
  SUBCASE("star stays a star") {
    const RewireResult r = randomize(testing::star(6), 1, 1);
    CHECK(r.graph == testing::star(6));
    CHECK_FALSE(r.trace.warnings.empty());
  }
  SUBCASE("K4 is returned unchanged") {
    const RewireResult r = randomize(testing::complete(4), 1, 1);
    CHECK(r.graph == testing::complete(4));
    CHECK_FALSE(r.trace.warnings.empty());
  }
  SUBCASE("output keeps the dK-distribution and is deterministic") {
    const Graph g = testing::close_triangles(testing::chung_lu_power_law(150, 2.3, 4.0, 25.0, 3), 40, 3);
    for (int d = 0; d <= 3; ++d) {
      RandomizeOptions o;
      o.budget = 3000;
      const RewireResult a = randomize(g, d, 42, o);
      const RewireResult b = randomize(g, d, 42, o);
      CHECK(distance(extract(a.graph, d), extract(g, d)) == 0.0);
      CHECK(a.graph == b.graph);
      CHECK(a.graph.num_edges() == g.num_edges());
      CHECK(a.trace.converged.has_value());
    }
  }
  SUBCASE("every legal proposal is accepted") {
    const Graph g = testing::chung_lu_power_law(150, 2.3, 4.0, 25.0, 4);
    RandomizeOptions o;
    o.budget = 2000;
    o.verify = false;
    RewiringChain chain(g, 1, 8);
    std::size_t legal = 0;
    for (int i = 0; i < 2000; ++i) legal += chain.propose().has_value();
    const RewireResult r = randomize(g, 1, 8, o);
    CHECK(r.trace.accepted == 2000);
    CHECK(r.trace.accepted + r.trace.rejected == r.trace.proposals);
    CHECK(legal > 0);
  }
}

TEST_CASE("schedule parsing") {
  const TemperatureSchedule s = parse_schedule("0:100,inf:5,1.5:10");
  REQUIRE(s.size() == 3);
  CHECK(s[0].temperature == 0.0);
  CHECK(s[0].steps == 100);
  CHECK(std::isinf(s[1].temperature));
  CHECK(s[2].temperature == 1.5);
  for (const char* bad : {"", "1", "1:", ":5", "-1:5", "x:5", "1:5,", "1:5x", "1:-5"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_schedule(bad), std::invalid_argument);
  }
}

TEST_CASE("target rewiring") {
  const Graph g = testing::close_triangles(testing::chung_lu_power_law(150, 2.3, 4.0, 25.0, 21), 30, 21);

  SUBCASE("target equal to the start converges at step 0") {
    const RewireResult r = target_rewire(g, 1, extract(g, 2), 1);
    CHECK(r.trace.proposals == 0);
    CHECK(r.trace.final_value == 0.0);
    CHECK(r.graph == g);
  }
  SUBCASE("strict T = 0 accepts only decreases and flags a stall above zero") {
    const RewireResult start = randomize(g, 1, 3, {.budget = 5000});
    const RewireResult r = target_rewire(start.graph, 1, extract(g, 2), 4);
    CHECK(r.trace.uphill_accepted == 0);
    CHECK(r.trace.accepted > 0);
    for (std::size_t i = 1; i < r.trace.series.size(); ++i) {
      CHECK(r.trace.series[i].value < r.trace.series[i - 1].value + 1e-12);
    }
    if (r.trace.final_value > 0) {
      CHECK(r.trace.stalled);
      CHECK(!r.trace.warnings.empty());
    }
    CHECK(static_cast<double>(count_distance(extract_2k(r.graph), extract_2k(g))) == r.trace.final_value);
  }
  SUBCASE("T = 0 with plateau moves reaches a 2K target and never goes uphill") {
    const RewireResult start = randomize(g, 1, 3, {.budget = 5000});
    const RewireResult r = target_rewire(start.graph, 1, extract(g, 2), 4, {.allow_plateau = true});
    CHECK(r.trace.final_value == 0.0);
    CHECK(extract_2k(r.graph) == extract_2k(g));
    for (std::size_t i = 1; i < r.trace.series.size(); ++i) {
      CHECK(r.trace.series[i].value <= r.trace.series[i - 1].value);
    }
    CHECK(trace_to_csv(r.trace).rfind("step,value,acceptance_rate\n", 0) == 0);
  }
  SUBCASE("returned graph is the best seen") {
    const RewireResult start = randomize(g, 1, 5, {.budget = 5000});
    TargetOptions o;
    o.schedule = parse_schedule("50:3000,0:2000");
    const RewireResult r = target_rewire(start.graph, 1, extract(g, 2), 6, o);
    CHECK(count_distance(extract_2k(r.graph), extract_2k(g)) == static_cast<std::uint64_t>(r.trace.final_value));
    double lowest = std::numeric_limits<double>::infinity();
    for (const TracePoint& p : r.trace.series) lowest = std::min(lowest, p.value);
    CHECK(r.trace.final_value <= lowest);
  }
  SUBCASE("huge temperature accepts uphill moves") {
    const RewireResult start = randomize(g, 1, 7, {.budget = 5000});
    TargetOptions o;
    o.schedule = {{1e12, 20000}};
    const RewireResult r = target_rewire(start.graph, 1, extract(g, 2), 8, o);
    REQUIRE(r.trace.uphill_proposed > 100);
    CHECK(static_cast<double>(r.trace.uphill_accepted) / static_cast<double>(r.trace.uphill_proposed) > 0.99);
  }
  SUBCASE("edge relocation towards a 1K target") {
    const Graph er = testing::erdos_renyi(150, 0.03, 2);
    RewiringChain scramble(er, 0, 3);
    for (int i = 0; i < 2000; ++i) {
      if (auto m = scramble.propose()) scramble.apply(*m);
    }
    const DkDistribution target = extract(scramble.graph(), 1);
    REQUIRE(target != extract(er, 1));
    TargetOptions o;
    o.schedule = parse_schedule("1:100000,0:100000");
    const RewireResult r = target_rewire(er, 0, target, 9, o);
    CHECK(r.graph.num_edges() == er.num_edges());
    CHECK(r.trace.final_value < r.trace.initial_value);
    CHECK(count_distance(extract_1k(r.graph), std::get<OneK>(target)) == static_cast<std::uint64_t>(r.trace.final_value));
  }
  SUBCASE("argument checks") {
    CHECK_THROWS_AS(target_rewire(g, 2, extract(g, 2), 0), std::invalid_argument);
    CHECK_THROWS_AS(target_rewire(g, 0, extract(g, 2), 0), CapabilityError);
    CHECK_THROWS_AS(target_rewire(testing::cycle(150), 1, extract(g, 2), 0), std::invalid_argument);
    CHECK_THROWS_AS(target_rewire(g, 1, extract(g, 0), 0), std::invalid_argument);
  }
}

TEST_CASE("incremental distance matches recomputation along a 3K run") {
  const Graph g = testing::close_triangles(testing::chung_lu_power_law(150, 2.3, 4.0, 25.0, 31), 40, 31);
  const RewireResult start = randomize(g, 2, 1, {.budget = 3000});
  const DkDistribution target = extract(g, 3);
  DistanceTracker tracker(start.graph, target);
  RewiringChain chain(start.graph, 2, 2);
  for (int step = 0; step < 20000; ++step) {
    if (auto move = chain.propose()) {
      const CensusDelta& delta = chain.delta(*move, true);
      if (tracker.change(delta) <= 0) {
        tracker.apply(delta);
        chain.apply(*move);
      }
    }
    if (step % 2000 == 0) CHECK(tracker.value() == count_distance(extract_3k(chain.graph()), std::get<ThreeK>(target)));
  }
}

TEST_CASE("explore") {
  const Graph g = testing::close_triangles(testing::chung_lu_power_law(200, 2.3, 4.0, 30.0, 41), 60, 41);
  SUBCASE("S moves in the requested direction") {
    const auto s0 = static_cast<double>(likelihood(g));
    const RewireResult up = explore(g, 1, Objective::kLikelihood, Direction::kMax, 1);
    const RewireResult down = explore(g, 1, Objective::kLikelihood, Direction::kMin, 1);
    CHECK(static_cast<double>(likelihood(up.graph)) == up.trace.final_value);
    CHECK(up.trace.final_value > s0);
    CHECK(down.trace.final_value < s0);
    CHECK(extract_1k(up.graph) == extract_1k(g));
  }
  SUBCASE("S2 and Cbar under 2K preservation") {
    const RewireResult s2 = explore(g, 2, Objective::kSecondOrderLikelihood, Direction::kMax, 2);
    CHECK(static_cast<double>(second_order_likelihood(s2.graph)) == s2.trace.final_value);
    CHECK(extract_2k(s2.graph) == extract_2k(g));
    const RewireResult c = explore(g, 2, Objective::kMeanClustering, Direction::kMin, 3);
    CHECK(clustering(c.graph).mean == doctest::Approx(c.trace.final_value).epsilon(1e-12));
    CHECK(c.trace.final_value < clustering(g).mean);
  }
  SUBCASE("K4 has no legal swaps") {
    const RewireResult r = explore(testing::complete(4), 2, Objective::kMeanClustering, Direction::kMax, 1);
    CHECK(r.graph == testing::complete(4));
    CHECK(r.trace.accepted == 0);
  }
  SUBCASE("invalid pairings") {
    CHECK_THROWS_AS(explore(g, 2, Objective::kLikelihood, Direction::kMax, 0), std::invalid_argument);
    CHECK_THROWS_AS(explore(g, 1, Objective::kMeanClustering, Direction::kMax, 0), std::invalid_argument);
    CHECK_THROWS_AS(explore(g, 3, Objective::kSecondOrderLikelihood, Direction::kMax, 0), std::invalid_argument);
    CHECK_THROWS_AS(parse_objective("T"), std::invalid_argument);
    CHECK(parse_direction("min") == Direction::kMin);
  }
}
