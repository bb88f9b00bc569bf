#include "test_graphs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>

#include "dk/random.hpp"

namespace dk::testing {

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  Graph g(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) g.add_edge(u, v);
    }
  }
  return g;
}

Graph chung_lu_power_law(std::size_t n, double gamma, double kbar, double kmax, std::uint64_t seed) {
  std::vector<double> w(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += w[i] = std::pow(static_cast<double>(i + 1), -1.0 / (gamma - 1.0));
  const double scale = kbar * static_cast<double>(n) / sum;
  sum = 0.0;
  for (double& x : w) sum += x = std::min(x * scale, kmax);
  Rng rng(seed);
  Graph g(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (rng.bernoulli(w[u] * w[v] / sum)) g.add_edge(u, v);
    }
  }
  return g;
}

Graph close_triangles(const Graph& g, std::size_t closures, std::uint64_t seed) {
  Rng rng(seed);
  Graph out = g;
  const std::size_t n = g.num_nodes();
  for (std::size_t attempt = 0; attempt < 50 * closures && closures > 0; ++attempt) {
    const auto c = static_cast<NodeId>(rng.below(n));
    const auto nb = out.neighbors(c);
    if (nb.size() < 2) continue;
    const NodeId a = nb[rng.below(nb.size())];
    const NodeId b = nb[rng.below(nb.size())];
    if (out.add_edge(a, b)) --closures;
  }
  return out;
}

Graph star(std::size_t leaves) {
  Graph g(leaves + 1);
  for (NodeId v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

Graph complete(std::size_t n) {
  Graph g(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

Graph cycle(std::size_t n) {
  Graph g(n);
  for (NodeId v = 0; v < n; ++v) g.add_edge(v, static_cast<NodeId>((v + 1) % n));
  return g;
}

Graph path(std::size_t n) {
  Graph g(n);
  for (NodeId v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph paw() {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  g.add_edge(0, 3);
  return g;
}

namespace {

std::vector<std::vector<bool>> matrix(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false));
  for (const Edge& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = true;
  return a;
}

std::vector<Degree> degrees_of(const std::vector<std::vector<bool>>& a) {
  std::vector<Degree> k(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) k[i] = static_cast<Degree>(std::count(a[i].begin(), a[i].end(), true));
  return k;
}

}  // namespace

TwoK matrix_census_2k(const Graph& g) {
  const auto a = matrix(g);
  const auto k = degrees_of(a);
  TwoK out;
  out.n = g.num_nodes();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (a[i][j]) ++out.counts[JointDegree::of(k[i], k[j])];
    }
  }
  return out;
}

ThreeK matrix_census_3k(const Graph& g) {
  const auto a = matrix(g);
  const auto k = degrees_of(a);
  ThreeK out;
  out.n = g.num_nodes();
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t l = j + 1; l < n; ++l) {
        const int edges = a[i][j] + a[i][l] + a[j][l];
        if (edges == 3) {
          ++out.triangles[TriangleKey::of(k[i], k[j], k[l])];
        } else if (edges == 2) {
          if (!a[j][l]) ++out.wedges[WedgeKey::of(k[j], k[i], k[l])];
          if (!a[i][l]) ++out.wedges[WedgeKey::of(k[i], k[j], k[l])];
          if (!a[i][j]) ++out.wedges[WedgeKey::of(k[i], k[l], k[j])];
        }
      }
    }
  }
  return out;
}

bool erdos_gallai(std::vector<std::size_t> d) {
  std::sort(d.rbegin(), d.rend());
  std::size_t total = 0;
  for (std::size_t x : d) total += x;
  if (total % 2) return false;
  const std::size_t n = d.size();
  std::size_t left = 0;
  for (std::size_t r = 1; r <= n; ++r) {
    left += d[r - 1];
    std::size_t right = r * (r - 1);
    for (std::size_t i = r; i < n; ++i) right += std::min(d[i], r);
    if (left > right) return false;
  }
  return true;
}

PathBetweenness path_enumeration_betweenness(const Graph& g) {
  const std::size_t n = g.num_nodes();
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::size_t>> dist(n, std::vector<std::size_t>(n, kInf));
  for (NodeId s = 0; s < n; ++s) {
    std::deque<NodeId> queue{s};
    dist[s][s] = 0;
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      for (NodeId v : g.neighbors(u)) {
        if (dist[s][v] == kInf) {
          dist[s][v] = dist[s][u] + 1;
          queue.push_back(v);
        }
      }
    }
  }

  PathBetweenness out;
  out.node.assign(n, 0.0);
  for (const Edge& e : g.edges()) out.edge[e] = 0.0;
  std::vector<NodeId> current;
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = 0; t < n; ++t) {
      if (s == t || dist[s][t] == kInf) continue;
      std::vector<std::vector<NodeId>> paths;
      current = {s};
      std::function<void(NodeId)> walk = [&](NodeId u) {
        if (u == t) {
          paths.push_back(current);
          return;
        }
        for (NodeId v : g.neighbors(u)) {
          if (dist[s][v] == dist[s][u] + 1 && dist[v][t] == dist[u][t] - 1) {
            current.push_back(v);
            walk(v);
            current.pop_back();
          }
        }
      };
      walk(s);
      const double share = 1.0 / static_cast<double>(paths.size());
      for (const auto& p : paths) {
        for (std::size_t i = 1; i + 1 < p.size(); ++i) out.node[p[i]] += share;
        for (std::size_t i = 0; i + 1 < p.size(); ++i) out.edge[Edge{p[i], p[i + 1]}.canonical()] += share;
      }
    }
  }
  return out;
}

}  // namespace dk::testing
