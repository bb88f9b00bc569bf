#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "census_keys.hpp"
#include "dk/rewiring.hpp"

namespace dk {

struct RewiringChain::State {
  int level = 1;
  Graph g;
  std::vector<Edge> edges;  // sides are not canonical; slot 2e+s is side s of edge e
  Rng rng;
  // Level >= 2: edge-end slots grouped by the degree of their node.
  std::vector<std::vector<std::size_t>> slots_by_degree;
  std::vector<std::size_t> slot_pos;
  Rejection last = Rejection::kNone;
  Move cached_move;
  CensusDelta cached;
  bool cache_valid = false;

  State(const Graph& graph, int lvl, std::uint64_t seed) : level(lvl), g(graph), edges(graph.edges()), rng(seed) {}

  NodeId node(std::size_t slot) const { return slot % 2 == 0 ? edges[slot / 2].u : edges[slot / 2].v; }
  NodeId& node_ref(std::size_t slot) { return slot % 2 == 0 ? edges[slot / 2].u : edges[slot / 2].v; }

  std::optional<Move> reject(Rejection why) {
    last = why;
    return std::nullopt;
  }

  std::optional<Move> propose_relocation() {
    const std::size_t n = g.num_nodes();
    const auto e = static_cast<std::size_t>(rng.below(edges.size()));
    const auto u = static_cast<NodeId>(rng.below(n));
    const auto v = static_cast<NodeId>(rng.below(n));
    if (u == v) return reject(Rejection::kSelfLoop);
    if (g.has_edge(u, v)) return reject(Rejection::kMultiEdge);
    Move m;
    m.arity = 1;
    m.edge_index = {e, e};
    m.removed = {edges[e].canonical(), edges[e].canonical()};
    m.added = {Edge{u, v}.canonical(), Edge{u, v}.canonical()};
    return m;
  }

  std::optional<Move> propose_swap() {
    const std::size_t ends = 2 * edges.size();
    const auto s1 = static_cast<std::size_t>(rng.below(ends));
    std::size_t s2;
    if (level == 1) {
      s2 = static_cast<std::size_t>(rng.below(ends));
    } else {
      const auto& pool = slots_by_degree[g.neighbors(node(s1)).size()];
      s2 = pool[static_cast<std::size_t>(rng.below(pool.size()))];
    }
    if (s1 / 2 == s2 / 2) return reject(Rejection::kSameEdge);
    const NodeId a = node(s1);
    const NodeId b = node(s1 ^ 1);
    const NodeId c = node(s2);
    const NodeId d = node(s2 ^ 1);
    if (a == d || c == b) return reject(Rejection::kSelfLoop);
    if (g.has_edge(a, d) || g.has_edge(c, b)) return reject(Rejection::kMultiEdge);
    Move m;
    m.arity = 2;
    m.edge_index = {s1 / 2, s2 / 2};
    m.removed = {Edge{a, b}.canonical(), Edge{c, d}.canonical()};
    m.added = {Edge{a, d}.canonical(), Edge{c, b}.canonical()};
    m.moved_slot = {s1 ^ 1, s2 ^ 1};
    return m;
  }

  const CensusDelta& delta(const Move& move, bool with_three_k) {
    if (!cache_valid || !(cached_move == move) || (with_three_k && !cached.three_k_ready)) {
      cached = census_delta(g, move, with_three_k);
      cached_move = move;
      cache_valid = true;
    }
    return cached;
  }
};

RewiringChain::RewiringChain(const Graph& g, int level, std::uint64_t seed) {
  if (level < 0 || level > 3) throw std::invalid_argument("RewiringChain: level must be 0..3");
  const std::size_t min_edges = level == 0 ? 1 : 2;
  if (g.num_edges() < min_edges) {
    throw std::invalid_argument("RewiringChain: need at least " + std::to_string(min_edges) + " edges");
  }
  detail::check_packable(g.max_degree());
  state_ = std::make_unique<State>(g, level, seed);
  State& s = *state_;
  if (level >= 2) {
    s.slots_by_degree.resize(g.max_degree() + 1);
    s.slot_pos.resize(2 * s.edges.size());
    for (std::size_t slot = 0; slot < 2 * s.edges.size(); ++slot) {
      auto& pool = s.slots_by_degree[g.neighbors(s.node(slot)).size()];
      s.slot_pos[slot] = pool.size();
      pool.push_back(slot);
    }
  }
}

RewiringChain::~RewiringChain() = default;
RewiringChain::RewiringChain(RewiringChain&&) noexcept = default;
RewiringChain& RewiringChain::operator=(RewiringChain&&) noexcept = default;

int RewiringChain::level() const noexcept { return state_->level; }
Rejection RewiringChain::last_rejection() const noexcept { return state_->last; }
const Graph& RewiringChain::graph() const noexcept { return state_->g; }
const std::vector<Edge>& RewiringChain::edge_array() const noexcept { return state_->edges; }
Rng& RewiringChain::rng() noexcept { return state_->rng; }

std::optional<Move> RewiringChain::propose() {
  State& s = *state_;
  s.last = Rejection::kNone;
  if (s.level == 0) return s.propose_relocation();
  auto move = s.propose_swap();
  if (move && s.level == 3 && !s.delta(*move, true).three_k_unchanged()) return s.reject(Rejection::kChangesThreeK);
  return move;
}

const CensusDelta& RewiringChain::delta(const Move& move, bool with_three_k) {
  return state_->delta(move, with_three_k);
}

void RewiringChain::apply(const Move& move) {
  State& s = *state_;
  s.cache_valid = false;
  if (move.arity == 1) {
    s.g.remove_edge(move.removed[0].u, move.removed[0].v);
    s.g.add_edge(move.added[0].u, move.added[0].v);
    s.edges[move.edge_index[0]] = move.added[0];
    return;
  }
  for (int i = 0; i < 2; ++i) s.g.remove_edge(move.removed[i].u, move.removed[i].v);
  for (int i = 0; i < 2; ++i) s.g.add_edge(move.added[i].u, move.added[i].v);

  const std::size_t o1 = move.moved_slot[0];
  const std::size_t o2 = move.moved_slot[1];
  const NodeId b = s.node(o1);
  const NodeId d = s.node(o2);
  s.node_ref(o1) = d;
  s.node_ref(o2) = b;
  if (s.level >= 2) {
    const std::size_t kb = s.g.neighbors(b).size();
    const std::size_t kd = s.g.neighbors(d).size();
    if (kb != kd) {
      // o1 now belongs to d's degree class and o2 to b's: trade their entries.
      s.slots_by_degree[kb][s.slot_pos[o1]] = o2;
      s.slots_by_degree[kd][s.slot_pos[o2]] = o1;
      std::swap(s.slot_pos[o1], s.slot_pos[o2]);
    }
  }
}

InitialRewirings census_initial_rewirings(const Graph& g, int level) {
  if (level < 0 || level > 3) throw std::invalid_argument("count_initial_rewirings: level must be 0..3");
  InitialRewirings out;
  const std::uint64_t m = g.num_edges();
  if (level == 0) {
    const std::uint64_t n = g.num_nodes();
    const std::uint64_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
    out.total = m * (pairs - m);
    return out;
  }
  if (level >= 2) detail::check_packable(g.max_degree());
  const std::vector<Edge> edges = g.edges();
  auto leaf = [&](NodeId v) { return g.neighbors(v).size() == 1; };
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const NodeId a = edges[i].u, b = edges[i].v, c = edges[j].u, d = edges[j].v;
      // Each crossing lists its new edges and the two node pairs that trade
      // partners: (a,d),(c,b) trades b<->d and a<->c; (a,c),(b,d) trades
      // b<->c and a<->d. Trading two leaves gives an isomorphic graph.
      struct Crossing {
        Edge e1, e2;
        std::array<NodeId, 4> traded;
      };
      const std::array<Crossing, 2> crossings{{{{a, d}, {c, b}, {b, d, a, c}}, {{a, c}, {b, d}, {b, c, a, d}}}};
      for (const Crossing& x : crossings) {
        if (x.e1.u == x.e1.v || x.e2.u == x.e2.v) continue;
        if (g.has_edge(x.e1.u, x.e1.v) || g.has_edge(x.e2.u, x.e2.v)) continue;
        Move move;
        move.removed = {edges[i], edges[j]};
        move.added = {x.e1.canonical(), x.e2.canonical()};
        if (level >= 2) {
          const CensusDelta delta = census_delta(g, move, level == 3);
          if (!delta.joint.empty() || !delta.three_k_unchanged()) continue;
        }
        ++out.total;
        const auto& t = x.traded;
        if ((leaf(t[0]) && leaf(t[1])) || (leaf(t[2]) && leaf(t[3]))) ++out.isomorphic;
      }
    }
  }
  return out;
}

std::uint64_t count_initial_rewirings(const Graph& g, int level, bool ignore_trivial_isomorphisms) {
  const InitialRewirings census = census_initial_rewirings(g, level);
  return ignore_trivial_isomorphisms ? census.total - census.isomorphic : census.total;
}

}  // namespace dk
