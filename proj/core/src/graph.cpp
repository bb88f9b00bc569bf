#include "dk/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dk {

namespace {

bool sorted_insert(std::vector<NodeId>& list, NodeId value) {
  auto it = std::lower_bound(list.begin(), list.end(), value);
  if (it != list.end() && *it == value) return false;
  list.insert(it, value);
  return true;
}

bool sorted_erase(std::vector<NodeId>& list, NodeId value) {
  auto it = std::lower_bound(list.begin(), list.end(), value);
  if (it == list.end() || *it != value) return false;
  list.erase(it);
  return true;
}

}  // namespace

Graph::Graph(std::size_t num_nodes) : adjacency_(num_nodes) {}

Graph Graph::from_edges(std::size_t num_nodes, std::span<const Edge> edges) {
  Graph g(num_nodes);
  for (const Edge& e : edges) {
    if (e.u >= num_nodes || e.v >= num_nodes) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  ") has an endpoint out of range");
    }
    if (!g.add_edge(e.u, e.v)) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  ") is a self-loop or duplicate");
    }
  }
  return g;
}

std::size_t Graph::degree(NodeId v) const {
  if (v >= adjacency_.size()) {
    throw std::out_of_range("node " + std::to_string(v) + " out of range (n=" +
                            std::to_string(adjacency_.size()) + ")");
  }
  return adjacency_[v].size();
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  if (u >= adjacency_.size() || v >= adjacency_.size()) return false;
  // Search the shorter list.
  const auto& a = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
  const NodeId other = &a == &adjacency_[u] ? v : u;
  return std::binary_search(a.begin(), a.end(), other);
}

bool Graph::add_edge(NodeId u, NodeId v) {
  if (u == v || u >= adjacency_.size() || v >= adjacency_.size()) return false;
  if (!sorted_insert(adjacency_[u], v)) return false;
  sorted_insert(adjacency_[v], u);
  ++num_edges_;
  return true;
}

bool Graph::remove_edge(NodeId u, NodeId v) {
  if (u >= adjacency_.size() || v >= adjacency_.size()) return false;
  if (!sorted_erase(adjacency_[u], v)) return false;
  sorted_erase(adjacency_[v], u);
  --num_edges_;
  return true;
}

NodeId Graph::add_node() {
  adjacency_.emplace_back();
  return static_cast<NodeId>(adjacency_.size() - 1);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (NodeId v : adjacency_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

std::vector<std::size_t> Graph::degree_sequence() const {
  std::vector<std::size_t> out(adjacency_.size());
  for (std::size_t v = 0; v < adjacency_.size(); ++v) out[v] = adjacency_[v].size();
  return out;
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& list : adjacency_) best = std::max(best, list.size());
  return best;
}

SwapStatus swap_edges(Graph& g, Edge e1, Edge e2, Crossing mode) {
  if (!g.has_edge(e1.u, e1.v) || !g.has_edge(e2.u, e2.v)) {
    throw std::invalid_argument("swap_edges: edge not present in graph");
  }
  const NodeId a = e1.u, b = e1.v, c = e2.u, d = e2.v;
  const Edge n1 = mode == Crossing::kAD_CB ? Edge{a, d} : Edge{a, c};
  const Edge n2 = mode == Crossing::kAD_CB ? Edge{c, b} : Edge{b, d};
  if (n1.u == n1.v || n2.u == n2.v) return SwapStatus::kSelfLoop;
  if (n1.canonical() == n2.canonical()) return SwapStatus::kMultiEdge;
  // A new edge coinciding with one being removed survives the swap, which
  // would silently shrink m. Treat it as a multi-edge.
  if (g.has_edge(n1.u, n1.v) || g.has_edge(n2.u, n2.v)) return SwapStatus::kMultiEdge;
  g.remove_edge(a, b);
  g.remove_edge(c, d);
  g.add_edge(n1.u, n1.v);
  g.add_edge(n2.u, n2.v);
  return SwapStatus::kApplied;
}

const char* to_string(SwapStatus status) noexcept {
  switch (status) {
    case SwapStatus::kApplied: return "applied";
    case SwapStatus::kSelfLoop: return "self-loop";
    case SwapStatus::kMultiEdge: return "multi-edge";
  }
  return "unknown";
}

std::vector<std::size_t> connected_components(const Graph& g) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(g.num_nodes(), kUnset);
  std::vector<NodeId> stack;
  std::size_t next = 0;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : g.neighbors(v)) {
        if (label[w] == kUnset) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

bool is_connected(const Graph& g) {
  const auto label = connected_components(g);
  return std::all_of(label.begin(), label.end(), [](std::size_t l) { return l == 0; });
}

Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  constexpr NodeId kAbsent = static_cast<NodeId>(-1);
  std::vector<NodeId> remap(g.num_nodes(), kAbsent);
  for (std::size_t i = 0; i < nodes.size(); ++i) remap[nodes[i]] = static_cast<NodeId>(i);
  Graph out(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (NodeId w : g.neighbors(nodes[i])) {
      if (remap[w] != kAbsent && i < remap[w]) out.add_edge(static_cast<NodeId>(i), remap[w]);
    }
  }
  return out;
}

ComponentExtraction giant_connected_component(const Graph& g) {
  if (g.num_nodes() == 0) throw std::invalid_argument("giant_connected_component: empty graph");
  const auto label = connected_components(g);
  const std::size_t count = *std::max_element(label.begin(), label.end()) + 1;
  std::vector<std::size_t> sizes(count, 0);
  for (std::size_t l : label) ++sizes[l];
  // Labels follow smallest member id, so the first maximum wins ties.
  const std::size_t giant =
      static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  ComponentExtraction out;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (label[v] == giant) out.original_ids.push_back(v);
  }
  out.graph = induced_subgraph(g, out.original_ids);
  out.component_sizes = sizes;
  std::sort(out.component_sizes.begin(), out.component_sizes.end(), std::greater<>());
  return out;
}

}  // namespace dk
