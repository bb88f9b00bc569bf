#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <variant>

#include "dk/graph.hpp"

namespace dk {

using Degree = std::uint32_t;
using Count = std::uint64_t;

// All distributions hold integer subgraph counts, never probabilities, so
// equality and distances are exact.

struct ZeroK {
  std::uint64_t n = 0;
  double kbar = 0.0;  // 2m/n

  friend bool operator==(const ZeroK&, const ZeroK&) = default;
};

struct OneK {
  std::uint64_t n = 0;
  std::map<Degree, Count> counts;  // degree k -> n(k)

  friend bool operator==(const OneK&, const OneK&) = default;
};

// Unordered degree pair stored low <= high.
struct JointDegree {
  Degree low = 0;
  Degree high = 0;

  static constexpr JointDegree of(Degree a, Degree b) noexcept {
    return a <= b ? JointDegree{a, b} : JointDegree{b, a};
  }
  friend constexpr auto operator<=>(const JointDegree&, const JointDegree&) = default;
};

struct TwoK {
  std::uint64_t n = 0;
  std::map<JointDegree, Count> counts;  // m(k1,k2)

  friend bool operator==(const TwoK&, const TwoK&) = default;
};

// Induced two-edge path end-center-end; ends are interchangeable, so they are
// stored sorted.
struct WedgeKey {
  Degree end_low = 0;
  Degree center = 0;
  Degree end_high = 0;

  static constexpr WedgeKey of(Degree end_a, Degree center, Degree end_b) noexcept {
    return end_a <= end_b ? WedgeKey{end_a, center, end_b} : WedgeKey{end_b, center, end_a};
  }
  friend constexpr auto operator<=>(const WedgeKey&, const WedgeKey&) = default;
};

// Fully symmetric: stored sorted ascending.
struct TriangleKey {
  Degree k1 = 0;
  Degree k2 = 0;
  Degree k3 = 0;

  static TriangleKey of(Degree a, Degree b, Degree c) noexcept;
  friend constexpr auto operator<=>(const TriangleKey&, const TriangleKey&) = default;
};

struct ThreeK {
  std::uint64_t n = 0;
  std::map<WedgeKey, Count> wedges;
  std::map<TriangleKey, Count> triangles;

  friend bool operator==(const ThreeK&, const ThreeK&) = default;
};

using DkDistribution = std::variant<ZeroK, OneK, TwoK, ThreeK>;

// The d of a distribution (0..3).
int order(const DkDistribution& dist) noexcept;

ZeroK extract_0k(const Graph& g);
OneK extract_1k(const Graph& g);
TwoK extract_2k(const Graph& g);
// Iterates every node as a wedge center and tests each neighbor pair once:
// O(sum_v deg(v)^2 log kmax).
ThreeK extract_3k(const Graph& g);

// Throws std::invalid_argument for d outside 0..3.
DkDistribution extract(const Graph& g, int d);

// Enumerates all node pairs (d=2) or triples (d=3) explicitly. Quadratic /
// cubic in n; meant as a reference for small graphs (n up to ~200).
DkDistribution count_subgraphs_bruteforce(const Graph& g, int d);

ZeroK project(const OneK& dist);
// n(k) = (sum_k' m^(k,k')) / k where m^ counts (k,k) edges twice; nodes not
// covered by any edge are reported as degree 0. Throws std::invalid_argument
// if some k does not divide its edge-end count.
OneK project(const TwoK& dist);

// d -> d-1. Throws std::invalid_argument for d = 0 and CapabilityError for
// 3K, which needs the host graph.
DkDistribution project(const DkDistribution& dist);

// 3K -> 2K using the graph the distribution was taken from. Throws
// std::invalid_argument if `host` does not have that 3K-distribution.
TwoK project(const ThreeK& dist, const Graph& host);

// Sum of squared count differences over the union of keys (wedges and
// triangles together for 3K; (kbar_a - kbar_b)^2 for 0K). Throws
// std::invalid_argument when the orders differ.
double distance(const DkDistribution& a, const DkDistribution& b);

// Integer-exact versions for d >= 1.
std::uint64_t count_distance(const OneK& a, const OneK& b);
std::uint64_t count_distance(const TwoK& a, const TwoK& b);
std::uint64_t count_distance(const ThreeK& a, const ThreeK& b);

// Recovers m(k1,k2) for every pair except (1,1) from wedge and triangle counts:
// an edge whose endpoint has degree k >= 2 appears in exactly k-1 neighbor
// pairs centered at that endpoint. Throws std::invalid_argument if the counts
// do not divide consistently.
TwoK edge_counts_from_wedges(const ThreeK& dist);

// Full 2K reconstruction from a 3K-distribution of a graph with no isolated
// nodes: the (1,1) count is whatever remains of n after all other nodes are
// accounted for. Exact for any graph without degree-0 nodes (in particular
// for connected graphs). Throws CapabilityError if the remainder is
// inconsistent.
TwoK infer_two_k(const ThreeK& dist);

// Census of a multigraph given as a raw edge list (self-loops count twice
// toward the degree of their node). Used to check pseudograph exactness
// before cleanup.
OneK multigraph_1k(std::size_t n, std::span<const Edge> raw_edges);
TwoK multigraph_2k(std::size_t n, std::span<const Edge> raw_edges);

Count total_edges(const TwoK& dist) noexcept;
Count total_nodes(const OneK& dist) noexcept;

}  // namespace dk
