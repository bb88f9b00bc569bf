#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "census_keys.hpp"
#include "dk/errors.hpp"
#include "dk/metrics.hpp"
#include "dk/rewiring.hpp"

namespace dk {
namespace {

constexpr std::uint64_t kStallFactor = 100;
// Plateau walks drift for long stretches before a strict decrease turns up.
constexpr std::uint64_t kPlateauStallFactor = 1000;
constexpr std::size_t kPanelSpectrumLimit = 4000;  // skip the O(n^3) λ₁ above this GCC size

std::uint64_t or_default(std::uint64_t value, std::uint64_t fallback) { return value ? value : fallback; }

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void record(RunTrace& trace, double value) {
  trace.series.push_back(
      {trace.proposals, value,
       trace.proposals ? static_cast<double>(trace.accepted) / static_cast<double>(trace.proposals) : 0.0});
}

// Metrics used to decide whether a randomized graph has settled.
struct Panel {
  std::optional<double> r;
  double cbar = 0.0;
  double dbar = 0.0;
  std::optional<double> lambda1;
};

Panel panel_of(const Graph& g) {
  Panel p;
  if (g.num_edges() == 0) return p;
  const Graph gcc = giant_connected_component(g).graph;
  p.r = assortativity(gcc);
  p.cbar = clustering(gcc).mean;
  p.dbar = distance_distribution(gcc).mean;
  if (gcc.num_nodes() >= 2 && gcc.num_nodes() <= kPanelSpectrumLimit) p.lambda1 = laplacian_spectrum(gcc).lambda1;
  return p;
}

// Relative change against max(|before|, 0.05): r and C̄ of random graphs sit
// near zero, where a purely relative test never passes.
bool settled(double before, double after, double tolerance) {
  return std::abs(after - before) <= tolerance * std::max(std::abs(before), 0.05);
}

bool settled(const Panel& a, const Panel& b, double tolerance) {
  if (a.r.has_value() != b.r.has_value() || a.lambda1.has_value() != b.lambda1.has_value()) return false;
  if (a.r && !settled(*a.r, *b.r, tolerance)) return false;
  if (a.lambda1 && !settled(*a.lambda1, *b.lambda1, tolerance)) return false;
  return settled(a.cbar, b.cbar, tolerance) && settled(a.dbar, b.dbar, tolerance);
}

bool same_two_k_except_leaf_pairs(const TwoK& a, const TwoK& b) {
  auto strip = [](std::map<JointDegree, Count> m) {
    m.erase(JointDegree{1, 1});
    return m;
  };
  return strip(a.counts) == strip(b.counts);
}

void check_compatible(const Graph& start, int preserve, const DkDistribution& target) {
  const int d = order(target);
  if (d == 0) throw std::invalid_argument("target_rewire: target must be 1K, 2K or 3K");
  if (preserve < 0 || preserve >= d) throw std::invalid_argument("target_rewire: need preserve < target order");
  if (preserve == 0 && d != 1) throw CapabilityError("target_rewire: edge relocation only supports 1K targets");

  auto fail = [](const std::string& what) {
    throw std::invalid_argument("target_rewire: start graph incompatible with target (" + what + ")");
  };
  const std::uint64_t n = start.num_nodes();
  std::visit(
      [&](const auto& t) {
        if (t.n != n) fail("node count");
      },
      target);

  if (d == 1) {
    const OneK& t = std::get<OneK>(target);
    std::uint64_t ends = 0;
    for (const auto& [k, c] : t.counts) ends += static_cast<std::uint64_t>(k) * c;
    if (total_nodes(t) != n || ends != 2 * start.num_edges()) fail("edge count");
  } else if (d == 2) {
    if (project(std::get<TwoK>(target)) != extract_1k(start)) fail("degree distribution");
  } else if (preserve == 2) {
    if (!same_two_k_except_leaf_pairs(edge_counts_from_wedges(std::get<ThreeK>(target)), extract_2k(start))) {
      fail("joint degree distribution");
    }
  } else {
    if (project(infer_two_k(std::get<ThreeK>(target))) != extract_1k(start)) fail("degree distribution");
  }
}

// Undo log of edge-array writes since the best-seen state.
class BestKeeper {
 public:
  BestKeeper(std::uint64_t value, std::size_t limit) : best_(value), limit_(limit) {}

  std::uint64_t best() const { return best_; }

  void before_apply(const RewiringChain& chain, const Move& move) {
    if (!journaling_) return;
    const auto& edges = chain.edge_array();
    for (int i = 0; i < move.arity; ++i) journal_.emplace_back(move.edge_index[i], edges[move.edge_index[i]]);
    if (journal_.size() > limit_) {
      snapshot_ = rebuild(edges);
      journal_.clear();
      journaling_ = false;
    }
  }

  void after_apply(std::uint64_t value) {
    if (value < best_) {
      best_ = value;
      journal_.clear();
      snapshot_.reset();
      journaling_ = true;
    }
  }

  Graph best_graph(const RewiringChain& chain, std::uint64_t current) const {
    const std::size_t n = chain.graph().num_nodes();
    if (current == best_) return chain.graph();
    const std::vector<Edge> edges = snapshot_ ? *snapshot_ : rebuild(chain.edge_array());
    return Graph::from_edges(n, edges);
  }

 private:
  std::vector<Edge> rebuild(std::vector<Edge> edges) const {
    for (auto it = journal_.rbegin(); it != journal_.rend(); ++it) edges[it->first] = it->second;
    return edges;
  }

  std::uint64_t best_;
  std::size_t limit_;
  bool journaling_ = true;
  std::vector<std::pair<std::size_t, Edge>> journal_;
  std::optional<std::vector<Edge>> snapshot_;
};

std::vector<std::int64_t> node_triangles(const Graph& g) {
  std::vector<std::int64_t> t(g.num_nodes(), 0);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    for (NodeId a : g.neighbors(v)) {
      if (a <= v) continue;
      for (NodeId b : g.neighbors(a)) {
        if (b <= a || !g.has_edge(v, b)) continue;
        ++t[v];
        ++t[a];
        ++t[b];
      }
    }
  }
  return t;
}

// Objective value with incremental updates. S and S₂ are exact integers; C̄
// is rebuilt from integer per-node triangle counts the same way clustering()
// averages them.
class ObjectiveTracker {
 public:
  ObjectiveTracker(const Graph& g, Objective objective) : objective_(objective) {
    switch (objective) {
      case Objective::kLikelihood:
        integer_ = static_cast<std::int64_t>(likelihood(g));
        break;
      case Objective::kSecondOrderLikelihood:
        integer_ = static_cast<std::int64_t>(second_order_likelihood(g));
        break;
      case Objective::kMeanClustering:
        triangles_ = node_triangles(g);
        degree_.resize(g.num_nodes());
        for (NodeId v = 0; v < g.num_nodes(); ++v) degree_[v] = static_cast<double>(g.neighbors(v).size());
        break;
    }
  }

  bool needs_three_k() const { return objective_ != Objective::kLikelihood; }

  double change(const CensusDelta& delta) const {
    switch (objective_) {
      case Objective::kLikelihood: {
        std::int64_t total = 0;
        for (const auto& e : delta.joint) {
          const JointDegree k = detail::unpack_joint(e.key);
          total += e.delta * static_cast<std::int64_t>(k.low) * k.high;
        }
        return static_cast<double>(total);
      }
      case Objective::kSecondOrderLikelihood:
        return static_cast<double>(second_order_change(delta));
      case Objective::kMeanClustering: {
        double total = 0.0;
        for (const auto& [v, dt] : delta.node_triangles) total += static_cast<double>(dt) / pairs(v);
        return total / static_cast<double>(degree_.size());
      }
    }
    return 0.0;
  }

  void apply(const CensusDelta& delta) {
    if (objective_ == Objective::kMeanClustering) {
      for (const auto& [v, dt] : delta.node_triangles) triangles_[v] += dt;
    } else if (objective_ == Objective::kLikelihood) {
      integer_ += static_cast<std::int64_t>(change(delta));
    } else {
      integer_ += second_order_change(delta);
    }
  }

  double value() const {
    if (objective_ != Objective::kMeanClustering) return static_cast<double>(integer_);
    double total = 0.0;
    for (std::size_t v = 0; v < degree_.size(); ++v) {
      if (degree_[v] >= 2) total += static_cast<double>(triangles_[v]) / pairs(v);
    }
    return degree_.empty() ? 0.0 : total / static_cast<double>(degree_.size());
  }

 private:
  double pairs(std::size_t v) const { return degree_[v] * (degree_[v] - 1.0) / 2.0; }

  static std::int64_t second_order_change(const CensusDelta& delta) {
    std::int64_t total = 0;
    for (const auto& e : delta.wedges) {
      const WedgeKey k = detail::unpack_wedge(e.key);
      total += e.delta * static_cast<std::int64_t>(k.end_low) * k.end_high;
    }
    return total;
  }

  Objective objective_;
  std::int64_t integer_ = 0;
  std::vector<std::int64_t> triangles_;
  std::vector<double> degree_;
};

}  // namespace

TemperatureSchedule parse_schedule(std::string_view text) {
  TemperatureSchedule out;
  auto bad = [&] { return std::invalid_argument("invalid schedule '" + std::string(text) + "'"); };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    const std::size_t colon = item.find(':');
    if (colon == std::string_view::npos) throw bad();
    const std::string temp(item.substr(0, colon));
    const std::string_view steps = item.substr(colon + 1);

    TemperaturePhase phase;
    if (temp == "inf") {
      phase.temperature = std::numeric_limits<double>::infinity();
    } else {
      std::size_t used = 0;
      try {
        phase.temperature = std::stod(temp, &used);
      } catch (const std::exception&) {
        throw bad();
      }
      if (used != temp.size() || !(phase.temperature >= 0.0)) throw bad();
    }
    const auto [end, ec] = std::from_chars(steps.data(), steps.data() + steps.size(), phase.steps);
    if (ec != std::errc{} || end != steps.data() + steps.size() || steps.empty()) throw bad();
    out.push_back(phase);
    pos = comma + 1;
  }
  if (out.empty()) throw bad();
  return out;
}

std::string trace_to_csv(const RunTrace& trace) {
  std::string out = "step,value,acceptance_rate\n";
  for (const TracePoint& p : trace.series) {
    out += std::to_string(p.step) + "," + format_double(p.value) + "," + format_double(p.acceptance_rate) + "\n";
  }
  return out;
}

RewireResult randomize(const Graph& g, int level, std::uint64_t seed, const RandomizeOptions& options) {
  if (level < 0 || level > 3) throw std::invalid_argument("randomize: level must be 0..3");
  RewireResult result{g, {}};
  RunTrace& trace = result.trace;
  const std::uint64_t m = g.num_edges();
  if (m < (level == 0 ? 1u : 2u)) {
    trace.warnings.push_back("no legal rewirings: graph returned unchanged");
    return result;
  }
  const std::uint64_t budget =
      options.budget ? *options.budget
                     : static_cast<std::uint64_t>(
                           std::llround(options.multiplier * static_cast<double>(count_initial_rewirings(g, level, true))));
  if (budget == 0) {
    trace.warnings.push_back("no non-trivial dK-preserving rewirings: graph returned unchanged");
    return result;
  }

  RewiringChain chain(g, level, seed);
  const std::uint64_t stall = or_default(options.stall_window, kStallFactor * m);
  const std::uint64_t sample = or_default(options.sample_every, m);
  record(trace, 0.0);

  // D_d to the input is zero throughout; the trace records it for uniformity.
  auto run = [&](std::uint64_t swaps) {
    const std::uint64_t goal = trace.accepted + swaps;
    std::uint64_t consecutive = 0;
    while (trace.accepted < goal) {
      ++trace.proposals;
      if (auto move = chain.propose()) {
        chain.apply(*move);
        ++trace.accepted;
        consecutive = 0;
      } else {
        ++trace.rejected;
        if (++consecutive >= stall) {
          trace.stalled = true;
          trace.warnings.push_back("stalled after " + std::to_string(consecutive) + " consecutive rejections");
          return false;
        }
      }
      if (trace.proposals % sample == 0) record(trace, 0.0);
    }
    return true;
  };

  bool ok = run(budget);
  if (ok && options.verify) {
    const auto extra = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::llround(options.verification_factor * static_cast<double>(budget))));
    Panel before = panel_of(chain.graph());
    ok = run(extra);
    Panel after = panel_of(chain.graph());
    bool converged = ok && settled(before, after, options.tolerance);
    if (ok && !converged) {
      trace.warnings.push_back("metric panel still moving after the budget; extending once");
      before = after;
      ok = run(extra);
      after = panel_of(chain.graph());
      converged = ok && settled(before, after, options.tolerance);
    }
    trace.converged = converged;
    if (!converged) trace.warnings.push_back("convergence check failed");
  }
  record(trace, 0.0);

  result.graph = chain.graph();
  if (extract(result.graph, level) != extract(g, level)) {
    throw std::logic_error("randomize: dK-distribution changed (internal error)");
  }
  return result;
}

RewireResult target_rewire(const Graph& start, int preserve, const DkDistribution& target, std::uint64_t seed,
                           const TargetOptions& options) {
  check_compatible(start, preserve, target);
  RewireResult result{start, {}};
  RunTrace& trace = result.trace;
  DistanceTracker tracker(start, target);
  std::uint64_t current = tracker.value();
  trace.initial_value = static_cast<double>(current);
  record(trace, trace.initial_value);
  if (current == 0) {
    trace.final_value = 0.0;
    return result;
  }
  const std::uint64_t m = start.num_edges();
  if (m < (preserve == 0 ? 1u : 2u)) {
    trace.final_value = trace.initial_value;
    trace.warnings.push_back("no legal rewirings: target not reached, D = " + std::to_string(current));
    return result;
  }

  TemperatureSchedule schedule = options.schedule;
  if (schedule.empty()) schedule.push_back({0.0, std::numeric_limits<std::uint64_t>::max()});
  const std::uint64_t stall =
      or_default(options.stall_window, (options.allow_plateau ? kPlateauStallFactor : kStallFactor) * m);
  const std::uint64_t sample = or_default(options.sample_every, m);
  const bool three_k = tracker.needs_three_k();

  RewiringChain chain(start, preserve, seed);
  BestKeeper best(current, 8 * m);
  std::uint64_t consecutive = 0;

  for (const TemperaturePhase& phase : schedule) {
    for (std::uint64_t step = 0; step < phase.steps && current > 0 && !trace.stalled; ++step) {
      ++trace.proposals;
      bool accepted = false;
      const std::uint64_t before = current;
      if (auto move = chain.propose()) {
        const CensusDelta& delta = chain.delta(*move, three_k);
        const std::int64_t change = tracker.change(delta);
        if (change < 0) {
          accepted = true;
        } else {
          ++trace.uphill_proposed;
          if (phase.temperature > 0.0) {
            accepted = std::isinf(phase.temperature) ||
                       chain.rng().uniform01() < std::exp(-static_cast<double>(change) / phase.temperature);
          } else {
            accepted = options.allow_plateau && change == 0;
          }
          if (accepted) ++trace.uphill_accepted;
        }
        if (accepted) {
          best.before_apply(chain, *move);
          tracker.apply(delta);
          chain.apply(*move);
          current = tracker.value();
          best.after_apply(current);
        }
      }
      if (accepted) {
        ++trace.accepted;
      } else {
        ++trace.rejected;
      }
      // At T = 0 plateau moves are not progress; only a strict decrease is.
      const bool progress = accepted && (phase.temperature > 0.0 || current < before);
      consecutive = progress ? 0 : consecutive + 1;
      if (consecutive >= stall) trace.stalled = true;
      if (trace.proposals % sample == 0) record(trace, static_cast<double>(current));
    }
    if (current == 0 || trace.stalled) break;
  }
  record(trace, static_cast<double>(current));

  result.graph = best.best_graph(chain, current);
  trace.final_value = static_cast<double>(best.best());
  if (best.best() > 0) {
    trace.warnings.push_back(std::string(trace.stalled ? "stalled" : "schedule exhausted") +
                             " before reaching the target: best D = " + std::to_string(best.best()) +
                             " (possible nonergodicity)");
  }
  return result;
}

Objective parse_objective(std::string_view name) {
  if (name == "S") return Objective::kLikelihood;
  if (name == "S2") return Objective::kSecondOrderLikelihood;
  if (name == "Cbar") return Objective::kMeanClustering;
  throw std::invalid_argument("unknown objective '" + std::string(name) + "' (expected S, S2 or Cbar)");
}

Direction parse_direction(std::string_view name) {
  if (name == "min") return Direction::kMin;
  if (name == "max") return Direction::kMax;
  throw std::invalid_argument("unknown direction '" + std::string(name) + "' (expected min or max)");
}

std::string_view to_string(Objective objective) noexcept {
  switch (objective) {
    case Objective::kLikelihood:
      return "S";
    case Objective::kSecondOrderLikelihood:
      return "S2";
    case Objective::kMeanClustering:
      return "Cbar";
  }
  return "?";
}

RewireResult explore(const Graph& g, int preserve, Objective objective, Direction direction, std::uint64_t seed,
                     const ExploreOptions& options) {
  const bool valid = (preserve == 1 && objective == Objective::kLikelihood) ||
                     (preserve == 2 && objective != Objective::kLikelihood);
  if (!valid) {
    throw std::invalid_argument("explore: objective " + std::string(to_string(objective)) +
                                " is not available with preserve level " + std::to_string(preserve));
  }
  RewireResult result{g, {}};
  RunTrace& trace = result.trace;
  ObjectiveTracker tracker(g, objective);
  trace.initial_value = tracker.value();
  record(trace, trace.initial_value);
  const std::uint64_t m = g.num_edges();
  if (m < 2) {
    trace.final_value = trace.initial_value;
    trace.warnings.push_back("no legal rewirings: graph returned unchanged");
    return result;
  }

  const std::uint64_t budget = or_default(options.budget, 200 * m);
  const std::uint64_t window = or_default(options.probe_window, 10 * m);
  const std::uint64_t sample = or_default(options.sample_every, m);
  const double sign = direction == Direction::kMax ? 1.0 : -1.0;
  // C̄ changes are floating point; ignore rounding-level gains.
  const double epsilon = objective == Objective::kMeanClustering ? 1e-12 : 0.0;

  RewiringChain chain(g, preserve, seed);
  std::uint64_t consecutive = 0;
  while (trace.proposals < budget) {
    ++trace.proposals;
    bool accepted = false;
    if (auto move = chain.propose()) {
      const CensusDelta& delta = chain.delta(*move, tracker.needs_three_k());
      if (sign * tracker.change(delta) > epsilon) {
        tracker.apply(delta);
        chain.apply(*move);
        accepted = true;
      }
    }
    if (accepted) {
      ++trace.accepted;
      consecutive = 0;
    } else {
      ++trace.rejected;
      if (++consecutive >= window) {
        trace.stalled = true;
        break;
      }
    }
    if (trace.proposals % sample == 0) record(trace, tracker.value());
  }
  trace.final_value = tracker.value();
  record(trace, trace.final_value);
  result.graph = chain.graph();
  return result;
}

}  // namespace dk
