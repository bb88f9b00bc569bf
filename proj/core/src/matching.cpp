#include <algorithm>
#include <string>

#include "dk/errors.hpp"
#include "layout.hpp"

namespace dk::detail {

namespace {

struct Placement {
  std::size_t job;
  NodeId u;
  NodeId v;
};

class MatchingAttempt {
 public:
  MatchingAttempt(const MatchingProblem& problem, Rng& rng, const MatchingOptions& options)
      : problem_(problem), rng_(rng), options_(options), graph_(problem.num_nodes), pools_(problem.pools) {
    pending_.resize(problem.jobs.size());
    for (std::size_t i = 0; i < pending_.size(); ++i) pending_[i] = i;
    rng_.shuffle(std::span(pending_));
    for (auto& pool : pools_) rng_.shuffle(std::span(pool));
  }

  // True on success. On failure remaining() tells how many edges were left.
  bool run(std::size_t& backtracks) {
    while (!pending_.empty()) {
      const std::size_t job = pending_.back();
      if (place(job)) {
        pending_.pop_back();
        continue;
      }
      if (backtracks >= options_.max_backtracks || placed_.empty()) return false;
      ++backtracks;
      unwind(std::max<std::size_t>(2 * problem_.max_degree, 1));
    }
    return true;
  }

  std::size_t remaining() const { return pending_.size(); }
  Graph take_graph() { return std::move(graph_); }

 private:
  bool legal(NodeId u, NodeId v) const { return u != v && !graph_.has_edge(u, v); }

  bool place(std::size_t job) {
    const auto [ca, cb] = problem_.jobs[job];
    auto& pa = pools_[ca];
    auto& pb = pools_[cb];
    if (pa.empty() || pb.empty() || (ca == cb && pa.size() < 2)) return false;

    for (std::size_t attempt = 0; attempt < options_.random_attempts; ++attempt) {
      const std::size_t i = rng_.below(pa.size());
      std::size_t j = rng_.below(pb.size());
      if (ca == cb && i == j) continue;
      if (legal(pa[i], pb[j])) {
        commit(job, i, j);
        return true;
      }
    }
    return place_exhaustive(job);
  }

  // Uniform choice among legal node pairs by reservoir sampling over distinct
  // nodes in the two pools.
  bool place_exhaustive(std::size_t job) {
    const auto [ca, cb] = problem_.jobs[job];
    auto firsts = [](const std::vector<NodeId>& pool) {
      std::vector<std::pair<NodeId, std::size_t>> out;  // (node, some slot index)
      out.reserve(pool.size());
      for (std::size_t i = 0; i < pool.size(); ++i) out.emplace_back(pool[i], i);
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end(), [](auto& x, auto& y) { return x.first == y.first; }), out.end());
      return out;
    };
    const auto nodes_a = firsts(pools_[ca]);
    const auto nodes_b = ca == cb ? nodes_a : firsts(pools_[cb]);
    std::size_t seen = 0;
    std::pair<std::size_t, std::size_t> pick{0, 0};
    for (const auto& [u, i] : nodes_a) {
      for (const auto& [v, j] : nodes_b) {
        if (ca == cb && v <= u) continue;
        if (!legal(u, v)) continue;
        ++seen;
        if (rng_.below(seen) == 0) pick = {i, j};
      }
    }
    if (seen == 0) return false;
    commit(job, pick.first, pick.second);
    return true;
  }

  void commit(std::size_t job, std::size_t i, std::size_t j) {
    const auto [ca, cb] = problem_.jobs[job];
    const NodeId u = pools_[ca][i];
    const NodeId v = pools_[cb][j];
    take_slot(ca, i, cb == ca ? &j : nullptr);
    take_slot(cb, j, nullptr);
    graph_.add_edge(u, v);
    placed_.push_back({job, u, v});
  }

  // Swap-removes slot `index`; keeps `other` pointing at the same slot.
  void take_slot(std::size_t pool_id, std::size_t index, std::size_t* other) {
    auto& pool = pools_[pool_id];
    const std::size_t last = pool.size() - 1;
    if (other && *other == last) *other = index;
    pool[index] = pool[last];
    pool.pop_back();
  }

  void unwind(std::size_t count) {
    for (std::size_t i = 0; i < count && !placed_.empty(); ++i) {
      const Placement p = placed_.back();
      placed_.pop_back();
      graph_.remove_edge(p.u, p.v);
      const auto [ca, cb] = problem_.jobs[p.job];
      pools_[ca].push_back(p.u);
      pools_[cb].push_back(p.v);
      pending_.push_back(p.job);
    }
  }

  const MatchingProblem& problem_;
  Rng& rng_;
  const MatchingOptions& options_;
  Graph graph_;
  std::vector<std::vector<NodeId>> pools_;
  std::vector<std::size_t> pending_;
  std::vector<Placement> placed_;
};

}  // namespace

GenOutcome run_matching(const MatchingProblem& problem, Rng& rng, const MatchingOptions& options) {
  GenOutcome out;
  std::size_t last_remaining = 0;
  for (unsigned attempt = 0; attempt <= options.retries; ++attempt) {
    MatchingAttempt matcher(problem, rng, options);
    std::size_t backtracks = 0;
    const bool ok = matcher.run(backtracks);
    out.backtracks += backtracks;
    if (ok) {
      out.graph = matcher.take_graph();
      return out;
    }
    last_remaining = matcher.remaining();
    if (attempt < options.retries) ++out.restarts;
  }
  throw GenerationError("matching deadlocked: " + std::to_string(out.restarts) + " restarts, " +
                        std::to_string(out.backtracks) + " backtracks, " + std::to_string(last_remaining) +
                        " of " + std::to_string(problem.jobs.size()) + " edges unplaced in the last attempt");
}

}  // namespace dk::detail
