#include <algorithm>
#include <array>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "census_keys.hpp"
#include "dk/errors.hpp"
#include "dk/rewiring.hpp"

namespace dk {
namespace {

using Entry = CensusDelta::Entry;

void merge(std::vector<Entry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries.size();) {
    Entry sum{entries[i].key, 0};
    for (; i < entries.size() && entries[i].key == sum.key; ++i) sum.delta += entries[i].delta;
    if (sum.delta != 0) entries[out++] = sum;
  }
  entries.resize(out);
}

void merge_nodes(std::vector<std::pair<NodeId, std::int64_t>>& entries) {
  std::sort(entries.begin(), entries.end());
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries.size();) {
    std::pair<NodeId, std::int64_t> sum{entries[i].first, 0};
    for (; i < entries.size() && entries[i].first == sum.first; ++i) sum.second += entries[i].second;
    if (sum.second != 0) entries[out++] = sum;
  }
  entries.resize(out);
}

Degree deg(const Graph& g, NodeId v) { return static_cast<Degree>(g.neighbors(v).size()); }

// Records triple {u, v, x} as a wedge or triangle given its three adjacencies.
void classify(const Graph& g, NodeId u, NodeId v, NodeId x, bool uv, bool ux, bool vx, std::int64_t sign,
              CensusDelta& out) {
  const int edges = int{uv} + int{ux} + int{vx};
  if (edges == 3) {
    out.triangles.push_back({detail::pack_triangle(TriangleKey::of(deg(g, u), deg(g, v), deg(g, x))), sign});
    out.node_triangles.emplace_back(u, sign);
    out.node_triangles.emplace_back(v, sign);
    out.node_triangles.emplace_back(x, sign);
  } else if (edges == 2) {
    // The center is the node on both edges.
    const NodeId c = !uv ? x : (!ux ? v : u);
    const NodeId a = c == u ? v : u;
    const NodeId b = c == x ? v : x;
    out.wedges.push_back({detail::pack_wedge(WedgeKey::of(deg(g, a), deg(g, c), deg(g, b))), sign});
  }
}

// A swap keeps every degree and toggles exactly the four changed pairs:
// removed pairs are edges before, added pairs are not. So only triples
// holding a changed pair can change, and their "after" adjacency is the
// "before" adjacency with changed pairs flipped; no lookups in g needed.
void three_k_delta(const Graph& g, const Move& move, CensusDelta& out) {
  const std::array<Edge, 4> changed{move.removed[0].canonical(), move.removed[1].canonical(),
                                    move.added[0].canonical(), move.added[1].canonical()};
  auto index_of = [&](NodeId x, NodeId y) {
    const Edge e = Edge{x, y}.canonical();
    for (int i = 0; i < 4; ++i) {
      if (changed[i] == e) return i;
    }
    return -1;
  };
  std::array<NodeId, 8> touched{};
  for (int i = 0; i < 4; ++i) {
    touched[2 * i] = changed[i].u;
    touched[2 * i + 1] = changed[i].v;
  }
  std::sort(touched.begin(), touched.end());
  const auto touched_end = std::unique(touched.begin(), touched.end());

  for (int j = 0; j < 4; ++j) {
    const NodeId u = changed[j].u;
    const NodeId v = changed[j].v;
    const bool uv_before = j < 2;
    auto visit = [&](NodeId x, bool ux, bool vx) {
      if (x == u || x == v) return;
      const int iu = index_of(u, x);
      const int iv = index_of(v, x);
      // A triple with two changed pairs belongs to the earlier one.
      if ((iu >= 0 && iu < j) || (iv >= 0 && iv < j)) return;
      classify(g, u, v, x, uv_before, ux, vx, -1, out);
      classify(g, u, v, x, !uv_before, ux != (iu >= 0), vx != (iv >= 0), +1, out);
    };
    const auto nu = g.neighbors(u);
    const auto nv = g.neighbors(v);
    std::size_t a = 0, b = 0;
    while (a < nu.size() || b < nv.size()) {
      const NodeId x = b == nv.size() || (a < nu.size() && nu[a] < nv[b]) ? nu[a] : nv[b];
      const bool ux = a < nu.size() && nu[a] == x;
      const bool vx = b < nv.size() && nv[b] == x;
      visit(x, ux, vx);
      a += ux;
      b += vx;
    }
    // Touched nodes not adjacent to u or v before the move.
    for (auto it = touched.begin(); it != touched_end; ++it) {
      if (!std::binary_search(nu.begin(), nu.end(), *it) && !std::binary_search(nv.begin(), nv.end(), *it)) {
        visit(*it, false, false);
      }
    }
  }
  merge(out.wedges);
  merge(out.triangles);
  merge_nodes(out.node_triangles);
}

}  // namespace

CensusDelta census_delta(const Graph& g, const Move& move, bool with_three_k) {
  CensusDelta out;
  if (move.arity == 1) {
    // Edge relocation: up to four endpoint degrees change.
    std::vector<std::pair<NodeId, std::int64_t>> change{
        {move.removed[0].u, -1}, {move.removed[0].v, -1}, {move.added[0].u, +1}, {move.added[0].v, +1}};
    merge_nodes(change);
    for (const auto& [v, d] : change) {
      const auto k = static_cast<std::int64_t>(g.neighbors(v).size());
      out.degrees.push_back({static_cast<std::uint64_t>(k), -1});
      out.degrees.push_back({static_cast<std::uint64_t>(k + d), +1});
    }
    merge(out.degrees);
    if (with_three_k) throw CapabilityError("census_delta: 3K change of an edge relocation is not supported");
    return out;
  }
  for (int i = 0; i < 2; ++i) {
    const Edge r = move.removed[i];
    const Edge a = move.added[i];
    out.joint.push_back({detail::pack_joint(JointDegree::of(deg(g, r.u), deg(g, r.v))), -1});
    out.joint.push_back({detail::pack_joint(JointDegree::of(deg(g, a.u), deg(g, a.v))), +1});
  }
  merge(out.joint);
  if (with_three_k) {
    three_k_delta(g, move, out);
    out.three_k_ready = true;
  }
  return out;
}

struct DistanceTracker::State {
  using Counts = std::unordered_map<std::uint64_t, std::int64_t>;
  int order = 0;
  // Per family (one for 1K/2K, wedges + triangles for 3K): current - target.
  std::array<Counts, 2> diff;
  std::uint64_t value = 0;

  const std::vector<Entry>& entries(const CensusDelta& delta, int family) const {
    if (order == 1) return delta.degrees;
    if (order == 2) return delta.joint;
    return family == 0 ? delta.wedges : delta.triangles;
  }
  int families() const { return order == 3 ? 2 : 1; }

  std::int64_t change(const CensusDelta& delta) const {
    std::int64_t total = 0;
    for (int f = 0; f < families(); ++f) {
      for (const Entry& e : entries(delta, f)) {
        const auto it = diff[f].find(e.key);
        const std::int64_t before = it == diff[f].end() ? 0 : it->second;
        total += e.delta * (2 * before + e.delta);
      }
    }
    return total;
  }
};

namespace {

template <typename Map, typename Pack>
void add_counts(std::unordered_map<std::uint64_t, std::int64_t>& diff, const Map& counts, std::int64_t sign,
                Pack pack) {
  for (const auto& [key, count] : counts) diff[pack(key)] += sign * static_cast<std::int64_t>(count);
}

}  // namespace

DistanceTracker::DistanceTracker(const Graph& g, const DkDistribution& target) : state_(std::make_unique<State>()) {
  detail::check_packable(g.max_degree());
  State& s = *state_;
  s.order = dk::order(target);
  auto identity = [](Degree k) { return static_cast<std::uint64_t>(k); };
  switch (s.order) {
    case 1:
      add_counts(s.diff[0], extract_1k(g).counts, +1, identity);
      add_counts(s.diff[0], std::get<OneK>(target).counts, -1, identity);
      break;
    case 2:
      add_counts(s.diff[0], extract_2k(g).counts, +1, detail::pack_joint);
      add_counts(s.diff[0], std::get<TwoK>(target).counts, -1, detail::pack_joint);
      break;
    case 3: {
      const ThreeK current = extract_3k(g);
      const ThreeK& goal = std::get<ThreeK>(target);
      add_counts(s.diff[0], current.wedges, +1, detail::pack_wedge);
      add_counts(s.diff[0], goal.wedges, -1, detail::pack_wedge);
      add_counts(s.diff[1], current.triangles, +1, detail::pack_triangle);
      add_counts(s.diff[1], goal.triangles, -1, detail::pack_triangle);
      break;
    }
    default:
      throw std::invalid_argument("DistanceTracker: target must be 1K, 2K or 3K");
  }
  for (const auto& family : s.diff) {
    for (const auto& [key, d] : family) s.value += static_cast<std::uint64_t>(d * d);
  }
}

DistanceTracker::~DistanceTracker() = default;
DistanceTracker::DistanceTracker(DistanceTracker&&) noexcept = default;
DistanceTracker& DistanceTracker::operator=(DistanceTracker&&) noexcept = default;

int DistanceTracker::order() const noexcept { return state_->order; }
std::uint64_t DistanceTracker::value() const noexcept { return state_->value; }
std::int64_t DistanceTracker::change(const CensusDelta& delta) const { return state_->change(delta); }

void DistanceTracker::apply(const CensusDelta& delta) {
  State& s = *state_;
  if (s.order == 3 && !delta.three_k_ready) throw std::logic_error("DistanceTracker: 3K delta missing");
  s.value = static_cast<std::uint64_t>(static_cast<std::int64_t>(s.value) + s.change(delta));
  for (int f = 0; f < s.families(); ++f) {
    for (const Entry& e : s.entries(delta, f)) {
      const auto it = s.diff[f].find(e.key);
      if (it == s.diff[f].end()) {
        s.diff[f].emplace(e.key, e.delta);
      } else if ((it->second += e.delta) == 0) {
        s.diff[f].erase(it);
      }
    }
  }
}

}  // namespace dk
