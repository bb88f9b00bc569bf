#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dk/dk_series.hpp"
#include "dk/graph.hpp"

namespace dk {

// Functions that need a connected graph throw std::invalid_argument on
// disconnected input; run them on giant_connected_component(g).graph.
// `workers` = 0 means default_worker_count(); results never depend on it.

struct DistanceStats {
  // Ordered pairs (self-pairs included) at each hop count.
  std::vector<std::uint64_t> pair_counts;
  // d(x) = pair_counts[x] / n^2; sums to 1.
  std::map<std::uint32_t, double> distribution;
  // Mean and population standard deviation over the n(n-1) non-self pairs.
  double mean = 0.0;
  double stddev = 0.0;
};

DistanceStats distance_distribution(const Graph& g, unsigned workers = 0);

struct Betweenness {
  // Sum over ordered pairs (s, t), s != v != t, of sigma_st(v) / sigma_st.
  std::vector<double> node;
  // Same convention for edges; edge[i] belongs to edges[i] (g.edges() order).
  std::vector<Edge> edges;
  std::vector<double> edge;
};

// Exact, by shortest-path DAG accumulation from every source.
Betweenness betweenness(const Graph& g, unsigned workers = 0);

struct Clustering {
  // Links among neighbors / C(deg, 2); 0 for degree < 2.
  std::vector<double> per_node;
  // C(k): mean of per_node over nodes of degree k.
  std::map<Degree, double> by_degree;
  // Mean of per_node over all nodes.
  double mean = 0.0;
};

Clustering clustering(const Graph& g);

// Pearson correlation of the degrees at either end of an edge, symmetrized
// over both orientations. nullopt when that variance is zero (regular
// graphs). Throws std::invalid_argument when g has no edges.
std::optional<double> assortativity(const Graph& g);

// S: sum over edges of the product of endpoint degrees.
std::uint64_t likelihood(const Graph& g);

// S2: sum over induced wedges of the product of the two end degrees.
std::uint64_t second_order_likelihood(const ThreeK& dist);
std::uint64_t second_order_likelihood(const Graph& g);

struct LaplacianSpectrum {
  double lambda1 = 0.0;     // smallest non-zero eigenvalue
  double lambda_max = 0.0;  // largest eigenvalue (lambda_{n-1})
  std::vector<double> eigenvalues;  // ascending; empty unless requested
};

// Eigenvalues at or below this are the zero mode.
inline constexpr double kZeroModeTolerance = 1e-8;

// Normalized Laplacian: 1 on the diagonal, -1/sqrt(k_i k_j) on edges. Dense
// symmetric eigensolver, so O(n^3). Needs n >= 2, no isolated nodes, and a
// single zero mode; throws std::invalid_argument otherwise.
LaplacianSpectrum laplacian_spectrum(const Graph& g, bool keep_eigenvalues = false);

struct MetricsReport {
  std::size_t nodes = 0;  // input graph
  std::size_t edges = 0;
  std::size_t gcc_nodes = 0;  // everything below is measured on the GCC
  std::size_t gcc_edges = 0;

  double kbar = 0.0;
  std::optional<double> r;
  double cbar = 0.0;
  double dbar = 0.0;
  double sigma_d = 0.0;
  std::uint64_t s = 0;
  std::uint64_t s2 = 0;
  std::optional<double> lambda1;
  std::optional<double> lambda_max;

  std::map<std::uint32_t, double> distance_distribution;
  std::map<Degree, double> clustering_by_degree;
  std::vector<double> betweenness;  // per GCC node
};

struct ReportOptions {
  bool spectrum = true;
  bool betweenness = true;
  unsigned workers = 0;
};

// Extracts the GCC and fills every field. Deterministic.
MetricsReport full_report(const Graph& g, const ReportOptions& options = {});

}  // namespace dk
