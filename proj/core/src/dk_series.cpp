#include "dk/dk_series.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "dk/errors.hpp"

namespace dk {

namespace {

template <typename Map>
std::uint64_t squared_difference(const Map& a, const Map& b) {
  std::uint64_t total = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  auto add = [&total](Count x, Count y) {
    const Count diff = x > y ? x - y : y - x;
    total += diff * diff;
  };
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      add(ia->second, 0);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      add(0, ib->second);
      ++ib;
    } else {
      add(ia->second, ib->second);
      ++ia;
      ++ib;
    }
  }
  return total;
}

Degree deg(const Graph& g, NodeId v) { return static_cast<Degree>(g.neighbors(v).size()); }

}  // namespace

TriangleKey TriangleKey::of(Degree a, Degree b, Degree c) noexcept {
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return {a, b, c};
}

int order(const DkDistribution& dist) noexcept { return static_cast<int>(dist.index()); }

ZeroK extract_0k(const Graph& g) {
  ZeroK out;
  out.n = g.num_nodes();
  out.kbar = out.n == 0 ? 0.0 : static_cast<double>(2 * g.num_edges()) / static_cast<double>(out.n);
  return out;
}

OneK extract_1k(const Graph& g) {
  OneK out;
  out.n = g.num_nodes();
  for (NodeId v = 0; v < g.num_nodes(); ++v) ++out.counts[deg(g, v)];
  return out;
}

TwoK extract_2k(const Graph& g) {
  TwoK out;
  out.n = g.num_nodes();
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (u < v) ++out.counts[JointDegree::of(deg(g, u), deg(g, v))];
    }
  }
  return out;
}

ThreeK extract_3k(const Graph& g) {
  ThreeK out;
  out.n = g.num_nodes();
  for (NodeId center = 0; center < g.num_nodes(); ++center) {
    const auto nbrs = g.neighbors(center);
    const Degree kc = static_cast<Degree>(nbrs.size());
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const NodeId a = nbrs[i];
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        const NodeId b = nbrs[j];
        if (g.has_edge(a, b)) {
          // Counted from its smallest node only.
          if (center < a) ++out.triangles[TriangleKey::of(kc, deg(g, a), deg(g, b))];
        } else {
          ++out.wedges[WedgeKey::of(deg(g, a), kc, deg(g, b))];
        }
      }
    }
  }
  return out;
}

DkDistribution extract(const Graph& g, int d) {
  switch (d) {
    case 0: return extract_0k(g);
    case 1: return extract_1k(g);
    case 2: return extract_2k(g);
    case 3: return extract_3k(g);
    default: throw std::invalid_argument("extract: d must be in 0..3, got " + std::to_string(d));
  }
}

DkDistribution count_subgraphs_bruteforce(const Graph& g, int d) {
  const auto n = static_cast<NodeId>(g.num_nodes());
  if (d == 2) {
    TwoK out;
    out.n = n;
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = i + 1; j < n; ++j) {
        if (g.has_edge(i, j)) ++out.counts[JointDegree::of(deg(g, i), deg(g, j))];
      }
    }
    return out;
  }
  if (d == 3) {
    ThreeK out;
    out.n = n;
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = i + 1; j < n; ++j) {
        const bool ij = g.has_edge(i, j);
        for (NodeId k = j + 1; k < n; ++k) {
          const bool ik = g.has_edge(i, k);
          const bool jk = g.has_edge(j, k);
          const int edges = ij + ik + jk;
          if (edges == 3) {
            ++out.triangles[TriangleKey::of(deg(g, i), deg(g, j), deg(g, k))];
          } else if (edges == 2) {
            // The center is the node on both edges.
            if (!ij) {
              ++out.wedges[WedgeKey::of(deg(g, i), deg(g, k), deg(g, j))];
            } else if (!ik) {
              ++out.wedges[WedgeKey::of(deg(g, i), deg(g, j), deg(g, k))];
            } else {
              ++out.wedges[WedgeKey::of(deg(g, j), deg(g, i), deg(g, k))];
            }
          }
        }
      }
    }
    return out;
  }
  throw std::invalid_argument("count_subgraphs_bruteforce: d must be 2 or 3");
}

ZeroK project(const OneK& dist) {
  ZeroK out;
  out.n = dist.n;
  Count degree_sum = 0;
  for (const auto& [k, count] : dist.counts) degree_sum += static_cast<Count>(k) * count;
  out.kbar = dist.n == 0 ? 0.0 : static_cast<double>(degree_sum) / static_cast<double>(dist.n);
  return out;
}

OneK project(const TwoK& dist) {
  std::map<Degree, Count> ends;
  for (const auto& [key, count] : dist.counts) {
    ends[key.low] += count;
    ends[key.high] += count;
  }
  OneK out;
  out.n = dist.n;
  Count covered = 0;
  for (const auto& [k, end_count] : ends) {
    if (k == 0 || end_count % k != 0) {
      throw std::invalid_argument("project: " + std::to_string(end_count) +
                                  " edge ends of degree " + std::to_string(k) +
                                  " cannot form whole nodes");
    }
    out.counts[k] = end_count / k;
    covered += end_count / k;
  }
  if (covered > dist.n) throw std::invalid_argument("project: joint-degree counts need more than n nodes");
  if (covered < dist.n) out.counts[0] = dist.n - covered;
  return out;
}

DkDistribution project(const DkDistribution& dist) {
  return std::visit(
      [](const auto& d) -> DkDistribution {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ZeroK>) {
          throw std::invalid_argument("project: 0K has no lower order");
        } else if constexpr (std::is_same_v<T, ThreeK>) {
          throw CapabilityError("project: 3K -> 2K requires the host graph");
        } else {
          return project(d);
        }
      },
      dist);
}

TwoK project(const ThreeK& dist, const Graph& host) {
  if (extract_3k(host) != dist) {
    throw std::invalid_argument("project: host graph does not have this 3K-distribution");
  }
  return extract_2k(host);
}

std::uint64_t count_distance(const OneK& a, const OneK& b) { return squared_difference(a.counts, b.counts); }
std::uint64_t count_distance(const TwoK& a, const TwoK& b) { return squared_difference(a.counts, b.counts); }
std::uint64_t count_distance(const ThreeK& a, const ThreeK& b) {
  return squared_difference(a.wedges, b.wedges) + squared_difference(a.triangles, b.triangles);
}

double distance(const DkDistribution& a, const DkDistribution& b) {
  if (a.index() != b.index()) {
    throw std::invalid_argument("distance: orders differ (" + std::to_string(order(a)) + " vs " +
                                std::to_string(order(b)) + ")");
  }
  return std::visit(
      [&b](const auto& lhs) -> double {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(b);
        if constexpr (std::is_same_v<T, ZeroK>) {
          const double diff = lhs.kbar - rhs.kbar;
          return diff * diff;
        } else {
          return static_cast<double>(count_distance(lhs, rhs));
        }
      },
      a);
}

TwoK edge_counts_from_wedges(const ThreeK& dist) {
  // incidences[(c, k)]: neighbor pairs centered at a degree-c node, counted
  // once per member whose degree is k.
  std::map<std::pair<Degree, Degree>, Count> incidences;
  for (const auto& [key, count] : dist.wedges) {
    incidences[{key.center, key.end_low}] += count;
    incidences[{key.center, key.end_high}] += count;
  }
  for (const auto& [key, count] : dist.triangles) {
    incidences[{key.k1, key.k2}] += count;
    incidences[{key.k1, key.k3}] += count;
    incidences[{key.k2, key.k1}] += count;
    incidences[{key.k2, key.k3}] += count;
    incidences[{key.k3, key.k1}] += count;
    incidences[{key.k3, key.k2}] += count;
  }
  // Edge ends at degree-c nodes whose far end has degree k.
  std::map<std::pair<Degree, Degree>, Count> ends;
  for (const auto& [key, count] : incidences) {
    const auto [center, other] = key;
    if (center < 2 || count % (center - 1) != 0) {
      throw std::invalid_argument("edge_counts_from_wedges: inconsistent neighbor-pair counts at degree " +
                                  std::to_string(center));
    }
    ends[key] = count / (center - 1);
  }
  TwoK out;
  out.n = dist.n;
  for (const auto& [key, count] : ends) {
    const auto [center, other] = key;
    if (center == other) {
      if (count % 2 != 0) {
        throw std::invalid_argument("edge_counts_from_wedges: odd end count for (" + std::to_string(center) +
                                    "," + std::to_string(center) + ")");
      }
      out.counts[JointDegree::of(center, other)] = count / 2;
    } else if (other < 2 || center < other) {
      // Seen from the far side too when other >= 2; both views must agree.
      if (other >= 2) {
        auto it = ends.find({other, center});
        if (it == ends.end() || it->second != count) {
          throw std::invalid_argument("edge_counts_from_wedges: asymmetric counts for (" +
                                      std::to_string(other) + "," + std::to_string(center) + ")");
        }
      }
      out.counts[JointDegree::of(center, other)] = count;
    } else if (!ends.contains({other, center})) {
      throw std::invalid_argument("edge_counts_from_wedges: asymmetric counts for (" +
                                  std::to_string(other) + "," + std::to_string(center) + ")");
    }
  }
  return out;
}

TwoK infer_two_k(const ThreeK& dist) {
  TwoK out = edge_counts_from_wedges(dist);
  std::map<Degree, Count> ends;
  for (const auto& [key, count] : out.counts) {
    ends[key.low] += count;
    ends[key.high] += count;
  }
  Count nodes = 0;
  for (const auto& [k, end_count] : ends) {
    if (k == 1) {
      nodes += end_count;
    } else if (end_count % k != 0) {
      throw CapabilityError("infer_two_k: " + std::to_string(end_count) + " edge ends of degree " +
                            std::to_string(k) + " do not form whole nodes");
    } else {
      nodes += end_count / k;
    }
  }
  if (nodes > dist.n || (dist.n - nodes) % 2 != 0) {
    throw CapabilityError("infer_two_k: n=" + std::to_string(dist.n) +
                          " is inconsistent with the wedge and triangle counts");
  }
  if (dist.n > nodes) out.counts[JointDegree{1, 1}] = (dist.n - nodes) / 2;
  return out;
}

OneK multigraph_1k(std::size_t n, std::span<const Edge> raw_edges) {
  std::vector<Count> degree(n, 0);
  for (const Edge& e : raw_edges) {
    ++degree.at(e.u);
    ++degree.at(e.v);
  }
  OneK out;
  out.n = n;
  for (Count k : degree) ++out.counts[static_cast<Degree>(k)];
  return out;
}

TwoK multigraph_2k(std::size_t n, std::span<const Edge> raw_edges) {
  std::vector<Count> degree(n, 0);
  for (const Edge& e : raw_edges) {
    ++degree.at(e.u);
    ++degree.at(e.v);
  }
  TwoK out;
  out.n = n;
  for (const Edge& e : raw_edges) {
    ++out.counts[JointDegree::of(static_cast<Degree>(degree[e.u]), static_cast<Degree>(degree[e.v]))];
  }
  return out;
}

Count total_edges(const TwoK& dist) noexcept {
  Count total = 0;
  for (const auto& [key, count] : dist.counts) total += count;
  return total;
}

Count total_nodes(const OneK& dist) noexcept {
  Count total = 0;
  for (const auto& [key, count] : dist.counts) total += count;
  return total;
}

}  // namespace dk
