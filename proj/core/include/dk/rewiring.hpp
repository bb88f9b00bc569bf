#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dk/dk_series.hpp"
#include "dk/graph.hpp"
#include "dk/random.hpp"

namespace dk {

// One Markov-chain step. A level-0 move relocates one edge; every other level
// crosses two edges: (a,b),(c,d) -> (a,d),(c,b).
struct Move {
  int arity = 2;  // 1 or 2 edges touched
  std::array<std::size_t, 2> edge_index{};
  std::array<Edge, 2> removed{};
  std::array<Edge, 2> added{};
  // Chain bookkeeping: edge-end slots (2*edge + side) whose node changes.
  std::array<std::size_t, 2> moved_slot{};

  friend bool operator==(const Move&, const Move&) = default;
};

enum class Rejection {
  kNone,
  kSameEdge,
  kSelfLoop,
  kMultiEdge,
  kChangesThreeK,  // level 3: the 2K-preserving swap alters wedges/triangles
};

// Change of the dK census caused by one move, keyed by packed degree tuples.
// For swaps (degrees fixed) `degrees` is empty; `wedges`, `triangles` and
// `node_triangles` are only filled when requested.
struct CensusDelta {
  struct Entry {
    std::uint64_t key;
    std::int64_t delta;
  };
  std::vector<Entry> degrees;  // 1K keys (level-0 moves)
  std::vector<Entry> joint;    // 2K keys
  std::vector<Entry> wedges;
  std::vector<Entry> triangles;
  std::vector<std::pair<NodeId, std::int64_t>> node_triangles;
  bool three_k_ready = false;

  bool three_k_unchanged() const noexcept { return wedges.empty() && triangles.empty(); }
};

// dK-preserving edge rewiring on a private copy of a graph.
//
// Level 1 crosses two uniformly chosen edges. Level 2 only crosses edges
// where the two nodes that trade partners have equal degree, so every
// (k, k') edge type is kept. Level 3 additionally rejects level-2 swaps that
// change any wedge or triangle count (checked locally around the endpoints).
// Level 0 moves a random edge onto a random unconnected pair. Self-loops and
// multi-edges are always rejected.
class RewiringChain {
 public:
  // Throws std::invalid_argument for a level outside 0..3 or fewer than two
  // edges (one edge for level 0).
  RewiringChain(const Graph& g, int level, std::uint64_t seed);
  ~RewiringChain();
  RewiringChain(RewiringChain&&) noexcept;
  RewiringChain& operator=(RewiringChain&&) noexcept;

  int level() const noexcept;

  // Draws one candidate; nullopt if it was rejected (see last_rejection()).
  std::optional<Move> propose();
  Rejection last_rejection() const noexcept;

  // Census change of `move` against the current graph. The 3K part is
  // computed on demand (with_three_k) and cached for the last move.
  const CensusDelta& delta(const Move& move, bool with_three_k);

  // Applies a move obtained from propose() on the current state.
  void apply(const Move& move);

  const Graph& graph() const noexcept;
  // Edge i of the chain's indexing (stable across moves).
  const std::vector<Edge>& edge_array() const noexcept;
  Rng& rng() noexcept;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

// Census change of a swap or level-0 move on `g` (which must not yet have
// the move applied). Used by the chain and the exhaustive counters.
CensusDelta census_delta(const Graph& g, const Move& move, bool with_three_k);

// Squared-count distance D_d to a fixed target (d = 1, 2, 3), maintained
// incrementally from census deltas with integer arithmetic.
class DistanceTracker {
 public:
  // Throws std::invalid_argument for a 0K target.
  DistanceTracker(const Graph& g, const DkDistribution& target);
  ~DistanceTracker();
  DistanceTracker(DistanceTracker&&) noexcept;
  DistanceTracker& operator=(DistanceTracker&&) noexcept;

  int order() const noexcept;
  bool needs_three_k() const noexcept { return order() == 3; }
  std::uint64_t value() const noexcept;
  std::int64_t change(const CensusDelta& delta) const;
  void apply(const CensusDelta& delta);

 private:
  struct State;
  std::unique_ptr<State> state_;
};

struct InitialRewirings {
  std::uint64_t total = 0;
  // Swaps whose result is isomorphic to the input for a provable reason:
  // the two nodes trading partners are both degree-1 leaves.
  std::uint64_t isomorphic = 0;
};

// Exhaustive census of dK-preserving moves available on g: every unordered
// edge pair with both crossings (levels 1-3), or every (edge, free pair)
// relocation (level 0, no isomorphism discount).
InitialRewirings census_initial_rewirings(const Graph& g, int level);
std::uint64_t count_initial_rewirings(const Graph& g, int level, bool ignore_trivial_isomorphisms);

struct TemperaturePhase {
  double temperature = 0.0;  // may be +infinity
  std::uint64_t steps = 0;   // proposals in this phase
};
using TemperatureSchedule = std::vector<TemperaturePhase>;

// "T1:steps1,T2:steps2,..."; T may be "inf". Throws std::invalid_argument.
TemperatureSchedule parse_schedule(std::string_view text);

struct TracePoint {
  std::uint64_t step = 0;  // proposals so far
  double value = 0.0;      // D_d or the objective
  double acceptance_rate = 0.0;
};

struct RunTrace {
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  // Target mode: proposals with dD >= 0 and how many of them were taken.
  std::uint64_t uphill_proposed = 0;
  std::uint64_t uphill_accepted = 0;
  std::vector<TracePoint> series;
  double initial_value = 0.0;
  double final_value = 0.0;
  bool stalled = false;
  std::optional<bool> converged;  // randomize: convergence check result
  std::vector<std::string> warnings;
};

// "step,value,acceptance_rate" with a header line.
std::string trace_to_csv(const RunTrace& trace);

struct RewireResult {
  Graph graph;
  RunTrace trace;
};

struct RandomizeOptions {
  // Accepted swaps = multiplier * (initial rewirings - trivially isomorphic).
  double multiplier = 10.0;
  // Extra accepted swaps for the convergence check, as a fraction of the budget.
  double verification_factor = 1.0;
  // Overrides the computed budget when set.
  std::optional<std::uint64_t> budget;
  bool verify = true;
  // Largest relative change of the panel (r, C̄, d̄, λ₁) still counted as converged.
  double tolerance = 0.02;
  std::uint64_t sample_every = 0;  // 0: every m proposals
  // Consecutive rejected proposals before giving up; 0: 100 * m.
  std::uint64_t stall_window = 0;
};

// dK-randomizing rewiring. The output has exactly g's dK-distribution.
RewireResult randomize(const Graph& g, int level, std::uint64_t seed, const RandomizeOptions& options = {});

struct TargetOptions {
  // Empty: a single T = 0 phase running until D = 0 or a stall.
  TemperatureSchedule schedule;
  // Proposals without progress that end the run; 0: 100 * m, or 1000 * m with
  // plateau moves. At T = 0 only a strict decrease counts as progress.
  std::uint64_t stall_window = 0;
  // Accept dD = 0 at T = 0 as well.
  bool allow_plateau = false;
  std::uint64_t sample_every = 0;
};

// dK-targeting d'K-preserving rewiring (Metropolis). Swaps keep the level
// `preserve` distribution and are accepted when they lower D_d towards
// `target`, or otherwise with probability exp(-dD/T). Returns the best graph
// seen. Throws std::invalid_argument if preserve >= order(target) or the start
// graph's lower-order census is incompatible with the target, and
// CapabilityError for level-0 moves against 2K/3K targets.
RewireResult target_rewire(const Graph& start, int preserve, const DkDistribution& target, std::uint64_t seed,
                           const TargetOptions& options = {});

enum class Objective { kLikelihood, kSecondOrderLikelihood, kMeanClustering };
enum class Direction { kMin, kMax };

// "S", "S2", "Cbar" / "min", "max"; throw std::invalid_argument.
Objective parse_objective(std::string_view name);
Direction parse_direction(std::string_view name);
std::string_view to_string(Objective objective) noexcept;

struct ExploreOptions {
  std::uint64_t budget = 0;        // proposals; 0: 200 * m
  std::uint64_t probe_window = 0;  // non-improving proposals before stopping; 0: 10 * m
  std::uint64_t sample_every = 0;
};

// Greedy dK-space exploration: a swap is taken only if it strictly improves
// the objective in the requested direction. Valid pairings: (1, S) and
// (2, S2 or Cbar); anything else throws std::invalid_argument.
RewireResult explore(const Graph& g, int preserve, Objective objective, Direction direction, std::uint64_t seed,
                     const ExploreOptions& options = {});

}  // namespace dk
