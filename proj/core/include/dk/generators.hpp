#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "dk/dk_series.hpp"
#include "dk/graph.hpp"

namespace dk {

enum class GenMethod { kStochastic, kPseudograph, kMatching };

// Parses "stochastic", "pseudograph", "matching"; throws std::invalid_argument.
GenMethod parse_gen_method(std::string_view name);
std::string_view to_string(GenMethod method) noexcept;

struct MatchingOptions {
  // Fresh-shuffle restarts after backtracking gives up.
  unsigned retries = 100;
  // Deadlocks resolved by unwinding the last 2*kmax placements before a
  // restart is forced.
  std::size_t max_backtracks = 64;
  // Random picks tried for one edge before an exhaustive legal-pair scan.
  std::size_t random_attempts = 64;
};

struct GenSpec {
  GenMethod method = GenMethod::kPseudograph;
  DkDistribution target;
  std::uint64_t seed = 0;
  MatchingOptions matching;
};

struct GenOutcome {
  Graph graph;  // always simple
  // Pseudograph only: the stub pairing before cleanup (may hold loops and
  // repeated pairs).
  std::vector<Edge> multigraph;
  std::size_t removed_self_loops = 0;
  std::size_t removed_multi_edges = 0;  // extra copies collapsed
  std::size_t restarts = 0;
  std::size_t backtracks = 0;
  std::size_t clamped_pairs = 0;  // stochastic: node pairs whose probability exceeded 1
};

// Dispatches on spec.method and checks method/order compatibility: all three
// methods take d <= 2; pseudograph and matching need d >= 1.
GenOutcome generate(const GenSpec& spec);

// Independent pair connections. Node labels q_i are the target's degree
// multiset (derived by projection for 2K), assigned exactly rather than
// sampled. Edge probabilities:
//   0K: kbar / n
//   1K: q_i q_j / (n q̄)
//   2K: (q̄ / n) P(q_i, q_j) / (P(q_i) P(q_j))
// Probabilities above 1 are clamped and counted. Pairs are sampled by
// geometric skipping within each label-class pair, so the cost is
// O(classes^2 + m) rather than O(n^2).
GenOutcome gen_stochastic(const DkDistribution& target, std::uint64_t seed);

// Configuration model: n(k) nodes with k stubs each, uniform stub pairing,
// then self-loops dropped and multi-edges collapsed. The multigraph degree
// sequence equals the target exactly. Throws std::invalid_argument when the
// stub total is odd.
GenOutcome gen_pseudograph_1k(const OneK& target, std::uint64_t seed);

// m(k1,k2) labelled edges; the k-labelled edge ends are shuffled and cut into
// groups of k, each group one degree-k node. The multigraph JDD equals the
// target exactly. Throws std::invalid_argument naming the first k whose
// edge-end count is not a multiple of k.
GenOutcome gen_pseudograph_2k(const TwoK& target, std::uint64_t seed);

// Same layouts as the pseudograph, but pairings that would form a self-loop
// or multi-edge are skipped. Deadlocks are resolved by bounded backtracking
// and then full restarts. On success the degree sequence (1K) or JDD (2K) of
// the simple output equals the target exactly; otherwise GenerationError.
GenOutcome gen_matching(const OneK& target, std::uint64_t seed, const MatchingOptions& options = {});
GenOutcome gen_matching(const TwoK& target, std::uint64_t seed, const MatchingOptions& options = {});

}  // namespace dk
