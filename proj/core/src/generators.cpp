#include "dk/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dk/random.hpp"
#include "layout.hpp"

namespace dk {

namespace detail {

std::size_t DegreeLayout::class_of(Degree k) const {
  auto it = std::lower_bound(degree.begin(), degree.end(), k);
  if (it == degree.end() || *it != k) throw std::out_of_range("no degree class " + std::to_string(k));
  return static_cast<std::size_t>(it - degree.begin());
}

DegreeLayout make_layout(const OneK& dist) {
  DegreeLayout layout;
  NodeId next = 0;
  for (const auto& [k, count] : dist.counts) {
    if (count == 0) continue;
    layout.degree.push_back(k);
    layout.offset.push_back(next);
    layout.size.push_back(count);
    next += static_cast<NodeId>(count);
  }
  layout.num_nodes = next;
  return layout;
}

void collapse_multigraph(std::size_t num_nodes, const std::vector<Edge>& raw, GenOutcome& out) {
  std::vector<Edge> simple;
  simple.reserve(raw.size());
  for (const Edge& e : raw) {
    if (e.u == e.v) {
      ++out.removed_self_loops;
    } else {
      simple.push_back(e.canonical());
    }
  }
  std::sort(simple.begin(), simple.end());
  const auto last = std::unique(simple.begin(), simple.end());
  out.removed_multi_edges += static_cast<std::size_t>(simple.end() - last);
  simple.erase(last, simple.end());
  out.graph = Graph::from_edges(num_nodes, simple);
}

}  // namespace detail

namespace {

using detail::DegreeLayout;

// Visits each candidate pair of one class pair independently with
// probability p, by geometric skipping over the linear pair index. For a class
// with itself the candidates are i < j. `visit(i, j)` gets class-local indices.
template <typename Visit>
void sample_pairs(std::uint64_t rows, std::uint64_t cols, bool same_class, double p, Rng& rng, Visit visit) {
  if (p <= 0.0) return;
  const std::uint64_t total = same_class ? rows * (rows > 0 ? rows - 1 : 0) / 2 : rows * cols;
  if (total == 0) return;
  const double log_q = p >= 1.0 ? 0.0 : std::log1p(-p);
  auto gap = [&]() -> std::uint64_t {
    if (p >= 1.0) return 0;
    const double skip = std::floor(std::log(rng.uniform_open_closed()) / log_q);
    return skip >= static_cast<double>(total) ? total : static_cast<std::uint64_t>(skip);
  };
  // Triangular decoding: row r covers indices [row_begin, row_begin + rows-1-r).
  std::uint64_t row = 0, row_begin = 0;
  for (std::uint64_t index = gap(); index < total; index += 1 + gap()) {
    if (!same_class) {
      visit(index / cols, index % cols);
      continue;
    }
    while (index >= row_begin + (rows - 1 - row)) {
      row_begin += rows - 1 - row;
      ++row;
    }
    visit(row, row + 1 + (index - row_begin));
  }
}

struct StochasticPlan {
  DegreeLayout layout;
  // Probability for class pair (a, b), a <= b.
  std::vector<std::vector<double>> probability;
};

StochasticPlan plan_0k(const ZeroK& target) {
  StochasticPlan plan;
  if (target.n == 0) return plan;
  OneK single{target.n, {{0, target.n}}};
  plan.layout = detail::make_layout(single);
  plan.probability = {{target.kbar / static_cast<double>(target.n)}};
  return plan;
}

StochasticPlan plan_1k(const OneK& target) {
  StochasticPlan plan;
  plan.layout = detail::make_layout(target);
  const auto classes = plan.layout.degree.size();
  double stub_total = 0.0;  // n * q̄
  for (std::size_t c = 0; c < classes; ++c) {
    stub_total += static_cast<double>(plan.layout.degree[c]) * static_cast<double>(plan.layout.size[c]);
  }
  plan.probability.assign(classes, std::vector<double>(classes, 0.0));
  if (stub_total == 0.0) return plan;
  for (std::size_t a = 0; a < classes; ++a) {
    for (std::size_t b = a; b < classes; ++b) {
      plan.probability[a][b] =
          static_cast<double>(plan.layout.degree[a]) * static_cast<double>(plan.layout.degree[b]) / stub_total;
    }
  }
  return plan;
}

StochasticPlan plan_2k(const TwoK& target) {
  StochasticPlan plan;
  const OneK labels = project(target);
  plan.layout = detail::make_layout(labels);
  const auto classes = plan.layout.degree.size();
  plan.probability.assign(classes, std::vector<double>(classes, 0.0));
  const double n = static_cast<double>(target.n);
  const double m = static_cast<double>(total_edges(target));
  if (m == 0.0) return plan;
  const double qbar = 2.0 * m / n;
  for (const auto& [key, count] : target.counts) {
    const std::size_t a = plan.layout.class_of(key.low);
    const std::size_t b = plan.layout.class_of(key.high);
    const double mu = key.low == key.high ? 2.0 : 1.0;
    const double joint = static_cast<double>(count) * mu / (2.0 * m);
    const double pa = static_cast<double>(plan.layout.size[a]) / n;
    const double pb = static_cast<double>(plan.layout.size[b]) / n;
    plan.probability[a][b] = (qbar / n) * joint / (pa * pb);
  }
  return plan;
}

GenOutcome realize(const StochasticPlan& plan, std::uint64_t seed) {
  Rng rng(seed);
  GenOutcome out;
  const DegreeLayout& layout = plan.layout;
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < layout.degree.size(); ++a) {
    for (std::size_t b = a; b < layout.degree.size(); ++b) {
      double p = plan.probability[a][b];
      const bool same = a == b;
      if (p > 1.0) {
        out.clamped_pairs += same ? layout.size[a] * (layout.size[a] - 1) / 2 : layout.size[a] * layout.size[b];
        p = 1.0;
      }
      sample_pairs(layout.size[a], layout.size[b], same, p, rng, [&](std::size_t i, std::size_t j) {
        edges.push_back({static_cast<NodeId>(layout.offset[a] + i), static_cast<NodeId>(layout.offset[b] + j)});
      });
    }
  }
  out.graph = Graph::from_edges(layout.num_nodes, edges);
  return out;
}

void require_even_stubs(const OneK& target) {
  Count stubs = 0;
  for (const auto& [k, count] : target.counts) stubs += static_cast<Count>(k) * count;
  if (stubs % 2 != 0) {
    throw std::invalid_argument("degree distribution has an odd stub total (" + std::to_string(stubs) + ")");
  }
}

// Layout for a JDD target, with the divisibility check reported per k.
DegreeLayout layout_for(const TwoK& target) {
  std::map<Degree, Count> ends;
  for (const auto& [key, count] : target.counts) {
    if (key.low == 0) throw std::invalid_argument("joint-degree key with degree 0");
    ends[key.low] += count;
    ends[key.high] += count;
  }
  for (const auto& [k, end_count] : ends) {
    if (end_count % k != 0) {
      throw std::invalid_argument("inconsistent joint-degree target: " + std::to_string(end_count) +
                                  " edge ends of degree " + std::to_string(k) + " is not a multiple of " +
                                  std::to_string(k));
    }
  }
  return detail::make_layout(project(target));
}

}  // namespace

GenMethod parse_gen_method(std::string_view name) {
  if (name == "stochastic") return GenMethod::kStochastic;
  if (name == "pseudograph") return GenMethod::kPseudograph;
  if (name == "matching") return GenMethod::kMatching;
  throw std::invalid_argument("unknown generation method '" + std::string(name) + "'");
}

std::string_view to_string(GenMethod method) noexcept {
  switch (method) {
    case GenMethod::kStochastic: return "stochastic";
    case GenMethod::kPseudograph: return "pseudograph";
    case GenMethod::kMatching: return "matching";
  }
  return "unknown";
}

GenOutcome gen_stochastic(const DkDistribution& target, std::uint64_t seed) {
  switch (order(target)) {
    case 0: return realize(plan_0k(std::get<ZeroK>(target)), seed);
    case 1: return realize(plan_1k(std::get<OneK>(target)), seed);
    case 2: return realize(plan_2k(std::get<TwoK>(target)), seed);
    default: throw std::invalid_argument("stochastic construction supports d <= 2");
  }
}

GenOutcome gen_pseudograph_1k(const OneK& target, std::uint64_t seed) {
  require_even_stubs(target);
  const DegreeLayout layout = detail::make_layout(target);
  std::vector<NodeId> stubs;
  for (std::size_t c = 0; c < layout.degree.size(); ++c) {
    for (std::size_t i = 0; i < layout.size[c]; ++i) {
      stubs.insert(stubs.end(), layout.degree[c], static_cast<NodeId>(layout.offset[c] + i));
    }
  }
  Rng rng(seed);
  rng.shuffle(std::span(stubs));
  GenOutcome out;
  out.multigraph.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) out.multigraph.push_back({stubs[i], stubs[i + 1]});
  detail::collapse_multigraph(layout.num_nodes, out.multigraph, out);
  return out;
}

GenOutcome gen_pseudograph_2k(const TwoK& target, std::uint64_t seed) {
  const DegreeLayout layout = layout_for(target);
  // Edge e has ends 2e (low-degree label) and 2e+1 (high-degree label).
  std::vector<Degree> end_label;
  for (const auto& [key, count] : target.counts) {
    for (Count i = 0; i < count; ++i) {
      end_label.push_back(key.low);
      end_label.push_back(key.high);
    }
  }
  std::vector<std::vector<std::size_t>> ends_by_class(layout.degree.size());
  for (std::size_t end = 0; end < end_label.size(); ++end) {
    ends_by_class[layout.class_of(end_label[end])].push_back(end);
  }
  Rng rng(seed);
  std::vector<NodeId> owner(end_label.size());
  for (std::size_t c = 0; c < layout.degree.size(); ++c) {
    auto& ends = ends_by_class[c];
    rng.shuffle(std::span(ends));
    const Degree k = layout.degree[c];
    for (std::size_t i = 0; i < ends.size(); ++i) owner[ends[i]] = static_cast<NodeId>(layout.offset[c] + i / k);
  }
  GenOutcome out;
  out.multigraph.reserve(end_label.size() / 2);
  for (std::size_t e = 0; e < end_label.size() / 2; ++e) out.multigraph.push_back({owner[2 * e], owner[2 * e + 1]});
  detail::collapse_multigraph(layout.num_nodes, out.multigraph, out);
  return out;
}

GenOutcome gen_matching(const OneK& target, std::uint64_t seed, const MatchingOptions& options) {
  require_even_stubs(target);
  const DegreeLayout layout = detail::make_layout(target);
  detail::MatchingProblem problem;
  problem.num_nodes = layout.num_nodes;
  problem.pools.resize(1);
  for (std::size_t c = 0; c < layout.degree.size(); ++c) {
    for (std::size_t i = 0; i < layout.size[c]; ++i) {
      problem.pools[0].insert(problem.pools[0].end(), layout.degree[c], static_cast<NodeId>(layout.offset[c] + i));
    }
    problem.max_degree = std::max<std::size_t>(problem.max_degree, layout.degree[c]);
  }
  problem.jobs.assign(problem.pools[0].size() / 2, {0, 0});
  Rng rng(seed);
  return detail::run_matching(problem, rng, options);
}

GenOutcome gen_matching(const TwoK& target, std::uint64_t seed, const MatchingOptions& options) {
  const DegreeLayout layout = layout_for(target);
  detail::MatchingProblem problem;
  problem.num_nodes = layout.num_nodes;
  problem.pools.resize(layout.degree.size());
  for (std::size_t c = 0; c < layout.degree.size(); ++c) {
    for (std::size_t i = 0; i < layout.size[c]; ++i) {
      problem.pools[c].insert(problem.pools[c].end(), layout.degree[c], static_cast<NodeId>(layout.offset[c] + i));
    }
    problem.max_degree = std::max<std::size_t>(problem.max_degree, layout.degree[c]);
  }
  for (const auto& [key, count] : target.counts) {
    problem.jobs.insert(problem.jobs.end(), count, {layout.class_of(key.low), layout.class_of(key.high)});
  }
  Rng rng(seed);
  return detail::run_matching(problem, rng, options);
}

GenOutcome generate(const GenSpec& spec) {
  const int d = order(spec.target);
  switch (spec.method) {
    case GenMethod::kStochastic:
      return gen_stochastic(spec.target, spec.seed);
    case GenMethod::kPseudograph:
      if (d == 1) return gen_pseudograph_1k(std::get<OneK>(spec.target), spec.seed);
      if (d == 2) return gen_pseudograph_2k(std::get<TwoK>(spec.target), spec.seed);
      throw std::invalid_argument("pseudograph construction needs a 1K or 2K target");
    case GenMethod::kMatching:
      if (d == 1) return gen_matching(std::get<OneK>(spec.target), spec.seed, spec.matching);
      if (d == 2) return gen_matching(std::get<TwoK>(spec.target), spec.seed, spec.matching);
      throw std::invalid_argument("matching construction needs a 1K or 2K target");
  }
  throw std::invalid_argument("unknown generation method");
}

}  // namespace dk
