#include "dk/metrics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dk/parallel.hpp"

namespace dk {

namespace {

// Sources are split into a fixed number of contiguous blocks so the
// floating-point reduction order does not depend on the thread count.
constexpr std::size_t kSourceBlocks = 64;

std::pair<std::size_t, std::size_t> block_range(std::size_t block, std::size_t n) {
  const std::size_t per = (n + kSourceBlocks - 1) / kSourceBlocks;
  const std::size_t begin = std::min(n, block * per);
  return {begin, std::min(n, begin + per)};
}

[[noreturn]] void throw_disconnected(const char* what) {
  throw std::invalid_argument(std::string(what) +
                              ": graph is disconnected; compute it on the giant connected component");
}

// Compressed adjacency with an edge id per slot.
struct EdgeIndexedAdjacency {
  std::vector<std::size_t> offsets;
  std::vector<NodeId> targets;
  std::vector<std::size_t> edge_ids;
  std::vector<Edge> edges;

  explicit EdgeIndexedAdjacency(const Graph& g) : offsets(g.num_nodes() + 1, 0), edges(g.edges()) {
    for (NodeId v = 0; v < g.num_nodes(); ++v) offsets[v + 1] = offsets[v] + g.neighbors(v).size();
    targets.resize(offsets.back());
    edge_ids.resize(offsets.back());
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (std::size_t id = 0; id < edges.size(); ++id) {
      const auto [u, v] = edges[id];
      targets[cursor[u]] = v;
      edge_ids[cursor[u]++] = id;
      targets[cursor[v]] = u;
      edge_ids[cursor[v]++] = id;
    }
  }
};

}  // namespace

DistanceStats distance_distribution(const Graph& g, unsigned workers) {
  const std::size_t n = g.num_nodes();
  DistanceStats out;
  if (n == 0) return out;

  std::vector<std::vector<std::uint64_t>> partial(kSourceBlocks);
  parallel_for_blocks(kSourceBlocks, workers, [&](std::size_t block) {
    auto [begin, end] = block_range(block, n);
    auto& hist = partial[block];
    std::vector<std::uint32_t> dist(n);
    std::vector<NodeId> queue(n);
    constexpr auto kUnseen = static_cast<std::uint32_t>(-1);
    for (std::size_t s = begin; s < end; ++s) {
      std::fill(dist.begin(), dist.end(), kUnseen);
      dist[s] = 0;
      std::size_t head = 0, tail = 0;
      queue[tail++] = static_cast<NodeId>(s);
      while (head < tail) {
        const NodeId v = queue[head++];
        for (NodeId w : g.neighbors(v)) {
          if (dist[w] == kUnseen) {
            dist[w] = dist[v] + 1;
            queue[tail++] = w;
          }
        }
      }
      if (tail != n) throw_disconnected("distance_distribution");
      for (std::size_t i = 0; i < tail; ++i) {
        const std::uint32_t x = dist[queue[i]];
        if (hist.size() <= x) hist.resize(x + 1, 0);
        ++hist[x];
      }
    }
  });

  for (const auto& hist : partial) {
    if (out.pair_counts.size() < hist.size()) out.pair_counts.resize(hist.size(), 0);
    for (std::size_t x = 0; x < hist.size(); ++x) out.pair_counts[x] += hist[x];
  }

  const double total = static_cast<double>(n) * static_cast<double>(n);
  std::uint64_t sum = 0, sum_sq = 0;
  for (std::size_t x = 0; x < out.pair_counts.size(); ++x) {
    const std::uint64_t c = out.pair_counts[x];
    out.distribution[static_cast<std::uint32_t>(x)] = static_cast<double>(c) / total;
    sum += c * x;
    sum_sq += c * x * x;
  }
  if (n > 1) {
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
    out.mean = static_cast<double>(sum) / pairs;
    const double second = static_cast<double>(sum_sq) / pairs;
    out.stddev = std::sqrt(std::max(0.0, second - out.mean * out.mean));
  }
  return out;
}

Betweenness betweenness(const Graph& g, unsigned workers) {
  const std::size_t n = g.num_nodes();
  const EdgeIndexedAdjacency adj(g);
  const std::size_t m = adj.edges.size();

  struct Partial {
    std::vector<double> node;
    std::vector<double> edge;
  };
  std::vector<Partial> partial(kSourceBlocks);

  parallel_for_blocks(kSourceBlocks, workers, [&](std::size_t block) {
    auto [begin, end] = block_range(block, n);
    if (begin == end) return;
    Partial& acc = partial[block];
    acc.node.assign(n, 0.0);
    acc.edge.assign(m, 0.0);
    std::vector<std::int64_t> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<NodeId> order(n);
    for (std::size_t s = begin; s < end; ++s) {
      std::fill(dist.begin(), dist.end(), -1);
      std::fill(sigma.begin(), sigma.end(), 0.0);
      std::fill(delta.begin(), delta.end(), 0.0);
      dist[s] = 0;
      sigma[s] = 1.0;
      std::size_t head = 0, tail = 0;
      order[tail++] = static_cast<NodeId>(s);
      while (head < tail) {
        const NodeId v = order[head++];
        for (std::size_t i = adj.offsets[v]; i < adj.offsets[v + 1]; ++i) {
          const NodeId w = adj.targets[i];
          if (dist[w] < 0) {
            dist[w] = dist[v] + 1;
            order[tail++] = w;
          }
          if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
        }
      }
      if (tail != n) throw_disconnected("betweenness");
      for (std::size_t i = tail; i-- > 0;) {
        const NodeId w = order[i];
        for (std::size_t j = adj.offsets[w]; j < adj.offsets[w + 1]; ++j) {
          const NodeId v = adj.targets[j];
          if (dist[v] == dist[w] - 1) {
            const double share = sigma[v] / sigma[w] * (1.0 + delta[w]);
            delta[v] += share;
            acc.edge[adj.edge_ids[j]] += share;
          }
        }
        if (w != s) acc.node[w] += delta[w];
      }
    }
  });

  Betweenness out;
  out.node.assign(n, 0.0);
  out.edge.assign(m, 0.0);
  out.edges = adj.edges;
  for (const Partial& p : partial) {
    if (p.node.empty()) continue;
    for (std::size_t v = 0; v < n; ++v) out.node[v] += p.node[v];
    for (std::size_t e = 0; e < m; ++e) out.edge[e] += p.edge[e];
  }
  return out;
}

Clustering clustering(const Graph& g) {
  const std::size_t n = g.num_nodes();
  Clustering out;
  out.per_node.assign(n, 0.0);
  std::map<Degree, std::pair<double, std::size_t>> sums;
  double total = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const auto nv = g.neighbors(v);
    const std::size_t k = nv.size();
    if (k >= 2) {
      std::uint64_t links = 0;
      for (NodeId a : nv) {
        // |N(v) ∩ N(a)| counts each neighbor link twice over all a.
        const auto na = g.neighbors(a);
        auto i = nv.begin();
        auto j = na.begin();
        while (i != nv.end() && j != na.end()) {
          if (*i < *j) {
            ++i;
          } else if (*j < *i) {
            ++j;
          } else {
            ++links;
            ++i;
            ++j;
          }
        }
      }
      links /= 2;
      out.per_node[v] = static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
    }
    auto& [sum, count] = sums[static_cast<Degree>(k)];
    sum += out.per_node[v];
    ++count;
    total += out.per_node[v];
  }
  for (const auto& [k, entry] : sums) out.by_degree[k] = entry.first / static_cast<double>(entry.second);
  out.mean = n == 0 ? 0.0 : total / static_cast<double>(n);
  return out;
}

std::optional<double> assortativity(const Graph& g) {
  if (g.num_edges() == 0) throw std::invalid_argument("assortativity: graph has no edges");
  // Integer moments, so the result is independent of edge order.
  std::uint64_t sum_product = 0, sum_ends = 0, sum_squares = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const std::uint64_t ku = g.neighbors(u).size();
    for (NodeId v : g.neighbors(u)) {
      if (v < u) continue;
      const std::uint64_t kv = g.neighbors(v).size();
      sum_product += ku * kv;
      sum_ends += ku + kv;
      sum_squares += ku * ku + kv * kv;
    }
  }
  const long double m = static_cast<long double>(g.num_edges());
  const long double ends = static_cast<long double>(sum_ends);
  // r = [4m Σjk - (Σ(j+k))^2] / [2m Σ(j²+k²) - (Σ(j+k))^2]
  const long double numerator = 4.0L * m * static_cast<long double>(sum_product) - ends * ends;
  const long double denominator = 2.0L * m * static_cast<long double>(sum_squares) - ends * ends;
  if (denominator <= 0.0L) return std::nullopt;
  return static_cast<double>(numerator / denominator);
}

std::uint64_t likelihood(const Graph& g) {
  std::uint64_t total = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (u < v) total += g.neighbors(u).size() * g.neighbors(v).size();
    }
  }
  return total;
}

std::uint64_t second_order_likelihood(const ThreeK& dist) {
  std::uint64_t total = 0;
  for (const auto& [key, count] : dist.wedges) {
    total += static_cast<std::uint64_t>(key.end_low) * key.end_high * count;
  }
  return total;
}

std::uint64_t second_order_likelihood(const Graph& g) { return second_order_likelihood(extract_3k(g)); }

LaplacianSpectrum laplacian_spectrum(const Graph& g, bool keep_eigenvalues) {
  const std::size_t n = g.num_nodes();
  if (n < 2) throw std::invalid_argument("laplacian_spectrum: need at least 2 nodes");
  std::vector<double> inv_sqrt(n);
  for (NodeId v = 0; v < n; ++v) {
    const std::size_t k = g.neighbors(v).size();
    if (k == 0) throw std::invalid_argument("laplacian_spectrum: isolated node " + std::to_string(v));
    inv_sqrt[v] = 1.0 / std::sqrt(static_cast<double>(k));
  }
  Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(u)) lap(u, v) = -inv_sqrt[u] * inv_sqrt[v];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("laplacian_spectrum: eigensolver failed");
  const Eigen::VectorXd& values = solver.eigenvalues();  // ascending

  std::size_t zero_modes = 0;
  while (zero_modes < n && values(static_cast<Eigen::Index>(zero_modes)) <= kZeroModeTolerance) ++zero_modes;
  if (zero_modes != 1) throw_disconnected("laplacian_spectrum");

  LaplacianSpectrum out;
  out.lambda1 = values(1);
  out.lambda_max = values(static_cast<Eigen::Index>(n - 1));
  if (keep_eigenvalues) out.eigenvalues.assign(values.data(), values.data() + n);
  return out;
}

MetricsReport full_report(const Graph& g, const ReportOptions& options) {
  MetricsReport report;
  report.nodes = g.num_nodes();
  report.edges = g.num_edges();
  if (g.num_nodes() == 0) return report;

  const Graph gcc = giant_connected_component(g).graph;
  report.gcc_nodes = gcc.num_nodes();
  report.gcc_edges = gcc.num_edges();
  report.kbar = extract_0k(gcc).kbar;

  const DistanceStats distances = distance_distribution(gcc, options.workers);
  report.distance_distribution = distances.distribution;
  report.dbar = distances.mean;
  report.sigma_d = distances.stddev;

  const Clustering c = clustering(gcc);
  report.cbar = c.mean;
  report.clustering_by_degree = c.by_degree;

  report.s = likelihood(gcc);
  report.s2 = second_order_likelihood(gcc);
  if (gcc.num_edges() > 0) report.r = assortativity(gcc);

  if (options.spectrum && gcc.num_nodes() >= 2) {
    const LaplacianSpectrum spectrum = laplacian_spectrum(gcc);
    report.lambda1 = spectrum.lambda1;
    report.lambda_max = spectrum.lambda_max;
  }
  if (options.betweenness) report.betweenness = betweenness(gcc, options.workers).node;
  return report;
}

}  // namespace dk
