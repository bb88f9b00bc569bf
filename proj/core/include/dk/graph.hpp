#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dk {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  // Endpoints ordered (min, max).
  constexpr Edge canonical() const noexcept { return u <= v ? Edge{u, v} : Edge{v, u}; }

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on dense node ids 0..n-1.
//
// Neighbor lists are kept sorted, so membership is a binary search and
// neighbor-set intersections (triangle and wedge census) are linear merges.
// Values are safe to share across threads for concurrent reads.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t num_nodes);

  // Builds a graph from edges that must already be simple; throws
  // std::invalid_argument on a self-loop, duplicate, or out-of-range endpoint.
  static Graph from_edges(std::size_t num_nodes, std::span<const Edge> edges);

  std::size_t num_nodes() const noexcept { return adjacency_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }

  // Throws std::out_of_range for v >= num_nodes().
  std::size_t degree(NodeId v) const;

  // Sorted ascending. v must be in range.
  std::span<const NodeId> neighbors(NodeId v) const noexcept { return adjacency_[v]; }

  bool has_edge(NodeId u, NodeId v) const noexcept;

  // Returns false (and leaves the graph unchanged) for self-loops and
  // existing edges.
  bool add_edge(NodeId u, NodeId v);
  bool remove_edge(NodeId u, NodeId v);

  NodeId add_node();

  // Every edge once, canonical orientation, sorted lexicographically.
  std::vector<Edge> edges() const;

  std::vector<std::size_t> degree_sequence() const;
  std::size_t max_degree() const noexcept;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t num_edges_ = 0;
};

// Which pair of new edges a double swap of (a,b),(c,d) produces.
enum class Crossing {
  kAD_CB,  // (a,d),(c,b)
  kAC_BD,  // (a,c),(b,d)
};

enum class SwapStatus {
  kApplied,
  kSelfLoop,
  kMultiEdge,
};

// Replaces e1=(a,b) and e2=(c,d) by the edges selected by `mode`. A swap that
// would create a self-loop or a multi-edge is rejected and g is unchanged.
// Throws std::invalid_argument if e1 or e2 is not an edge of g.
SwapStatus swap_edges(Graph& g, Edge e1, Edge e2, Crossing mode);

const char* to_string(SwapStatus status) noexcept;

struct ComponentExtraction {
  Graph graph;
  // original_ids[i] is the id in the input graph of node i of `graph`.
  std::vector<NodeId> original_ids;
  // Sizes of all connected components, largest first.
  std::vector<std::size_t> component_sizes;
};

// Component label per node; labels are assigned in order of each component's
// smallest node id.
std::vector<std::size_t> connected_components(const Graph& g);

bool is_connected(const Graph& g);

// Induced subgraph on the largest connected component. Ties go to the
// component containing the smallest node id. Throws std::invalid_argument on
// an empty graph.
ComponentExtraction giant_connected_component(const Graph& g);

Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

}  // namespace dk
