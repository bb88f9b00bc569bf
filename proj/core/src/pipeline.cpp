#include "dk/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "dk/errors.hpp"
#include "json.hpp"
#include "dk/random.hpp"
#include "dk/report.hpp"

namespace dk {
namespace {

using Json = nlohmann::ordered_json;

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

std::string pad(const std::string& text, std::size_t width) {
  // Display width counts code points, not bytes, so k̄ and C̄ line up.
  std::size_t points = 0;
  for (unsigned char ch : text) points += (ch & 0xC0) != 0x80;
  return text + std::string(width > points ? width - points : 0, ' ');
}

std::string cell(const std::optional<double>& x) { return x ? format_number(*x) : "-"; }

}  // namespace

std::vector<std::uint64_t> ensemble_seeds(std::uint64_t master, std::size_t count) {
  std::vector<std::uint64_t> seeds(count);
  for (std::size_t i = 0; i < count; ++i) seeds[i] = derive_seed(master, i);
  return seeds;
}

EnsembleSummary summarize(std::span<const RunRecord> runs) {
  if (runs.empty()) throw std::invalid_argument("summarize: no runs");
  EnsembleSummary out;
  out.runs = runs.size();
  for (const RunRecord& run : runs) out.seeds.push_back(run.seed);
  const auto& names = runs.front().values;
  for (std::size_t i = 0; i < names.size(); ++i) {
    MetricSummary metric;
    metric.name = names[i].first;
    double sum = 0.0;
    for (const RunRecord& run : runs) {
      if (run.values.size() != names.size() || run.values[i].first != metric.name) {
        throw std::invalid_argument("summarize: runs report different values");
      }
      if (run.values[i].second) {
        ++metric.defined;
        sum += *run.values[i].second;
      }
    }
    if (metric.defined > 0) metric.mean = sum / static_cast<double>(metric.defined);
    if (metric.defined > 1) {
      double squares = 0.0;
      for (const RunRecord& run : runs) {
        if (run.values[i].second) squares += (*run.values[i].second - metric.mean) * (*run.values[i].second - metric.mean);
      }
      metric.stddev = std::sqrt(squares / static_cast<double>(metric.defined - 1));
    }
    out.metrics.push_back(metric);
  }
  return out;
}

std::vector<std::pair<std::string, std::optional<double>>> scalar_values(const MetricsReport& report) {
  std::vector<std::pair<std::string, std::optional<double>>> out;
  out.emplace_back("nodes", static_cast<double>(report.nodes));
  out.emplace_back("edges", static_cast<double>(report.edges));
  out.emplace_back("gcc_nodes", static_cast<double>(report.gcc_nodes));
  out.emplace_back("gcc_edges", static_cast<double>(report.gcc_edges));
  for (const ScalarMetric& m : scalar_metrics(report)) out.emplace_back(std::string(m.name), m.value);
  return out;
}

std::string summary_to_json(const EnsembleSummary& summary) {
  Json doc;
  doc["runs"] = summary.runs;
  doc["seeds"] = summary.seeds;
  Json metrics = Json::object();
  for (const MetricSummary& m : summary.metrics) {
    Json entry;
    entry["defined"] = m.defined;
    entry["mean"] = m.defined ? Json(m.mean) : Json(nullptr);
    entry["stddev"] = m.defined ? Json(m.stddev) : Json(nullptr);
    metrics[m.name] = entry;
  }
  doc["metrics"] = metrics;
  return doc.dump(2) + "\n";
}

std::string summary_to_text(const EnsembleSummary& summary) {
  std::string out = "runs: " + std::to_string(summary.runs) + "\n";
  out += pad("metric", 22) + pad("mean", 16) + pad("stddev", 16) + "defined\n";
  for (const MetricSummary& m : summary.metrics) {
    const std::optional<double> mean = m.defined ? std::optional<double>(m.mean) : std::nullopt;
    const std::optional<double> sd = m.defined ? std::optional<double>(m.stddev) : std::nullopt;
    out += pad(m.name, 22) + pad(cell(mean), 16) + pad(cell(sd), 16) + std::to_string(m.defined) + "\n";
  }
  return out;
}

CompareReport compare_reports(const MetricsReport& a, std::span<const MetricsReport> b,
                              const std::array<double, 4>& distances) {
  if (b.empty()) throw std::invalid_argument("compare: nothing to compare against");
  CompareReport out;
  out.distances = distances;
  out.ensemble_size = b.size();
  const std::vector<ScalarMetric> left = scalar_metrics(a);
  std::vector<std::vector<ScalarMetric>> right;
  for (const MetricsReport& r : b) right.push_back(scalar_metrics(r));
  for (std::size_t i = 0; i < left.size(); ++i) {
    CompareRow row;
    row.name = left[i].name;
    row.symbol = left[i].symbol;
    row.a = left[i].value;
    double sum = 0.0;
    std::size_t defined = 0;
    for (const auto& member : right) {
      if (member[i].value) {
        sum += *member[i].value;
        ++defined;
      }
    }
    if (defined) row.b = sum / static_cast<double>(defined);
    if (row.a && row.b) {
      row.delta = *row.b - *row.a;
      if (*row.a != 0.0) row.relative_delta = *row.delta / std::abs(*row.a);
    }
    out.rows.push_back(row);
  }
  return out;
}

CompareReport compare(const Graph& a, std::span<const Graph> b, const ReportOptions& options) {
  ReportOptions scalars = options;
  scalars.betweenness = false;
  const MetricsReport left = full_report(a, scalars);
  std::vector<MetricsReport> right;
  std::array<double, 4> distances{};
  std::array<DkDistribution, 4> census;
  for (int d = 0; d < 4; ++d) census[d] = extract(a, d);
  for (const Graph& g : b) {
    right.push_back(full_report(g, scalars));
    for (int d = 0; d < 4; ++d) distances[d] += distance(census[d], extract(g, d));
  }
  for (double& x : distances) x /= static_cast<double>(b.empty() ? 1 : b.size());
  return compare_reports(left, right, distances);
}

std::string compare_to_json(const CompareReport& report) {
  Json doc;
  doc["ensemble_size"] = report.ensemble_size;
  Json rows = Json::array();
  for (const CompareRow& row : report.rows) {
    Json r;
    r["metric"] = row.name;
    r["a"] = optional_number(row.a);
    r["b"] = optional_number(row.b);
    r["delta"] = optional_number(row.delta);
    r["relative_delta"] = optional_number(row.relative_delta);
    rows.push_back(r);
  }
  doc["scalars"] = rows;
  Json distances;
  for (int d = 0; d < 4; ++d) distances["D" + std::to_string(d)] = report.distances[d];
  doc["distances"] = distances;
  return doc.dump(2) + "\n";
}

std::string compare_to_text(const CompareReport& report) {
  std::string out = pad("", 8) + pad("A", 16) + pad(report.ensemble_size > 1 ? "B (mean)" : "B", 16) +
                    pad("B - A", 16) + "rel\n";
  for (const CompareRow& row : report.rows) {
    out += pad(row.symbol, 8) + pad(cell(row.a), 16) + pad(cell(row.b), 16) + pad(cell(row.delta), 16) +
           cell(row.relative_delta) + "\n";
  }
  for (int d = 0; d < 4; ++d) {
    out += "D" + std::to_string(d) + " = " + format_number(report.distances[d]) + "\n";
  }
  return out;
}

BootstrapResult bootstrap_target_rewire(const DkDistribution& target, std::uint64_t seed,
                                        const TargetOptions& options) {
  const int d = order(target);
  if (d == 0) throw std::invalid_argument("bootstrap_target_rewire: target must be 1K, 2K or 3K");
  std::optional<TwoK> two_k;
  if (d == 2) two_k = std::get<TwoK>(target);
  if (d == 3) two_k = infer_two_k(std::get<ThreeK>(target));
  const OneK one_k = d == 1 ? std::get<OneK>(target) : project(*two_k);

  BootstrapResult out;
  out.graph = gen_matching(one_k, derive_seed(seed, 0)).graph;
  if (d >= 2) {
    // Strict T = 0 descent often strands at D2 = 4; the 3K stage needs exact 2K.
    TargetOptions two_k_options = options;
    two_k_options.allow_plateau = true;
    RewireResult stage = target_rewire(out.graph, 1, *two_k, derive_seed(seed, 1), two_k_options);
    out.graph = std::move(stage.graph);
    out.final_distance = static_cast<std::uint64_t>(stage.trace.final_value);
    out.stages.push_back(std::move(stage.trace));
  }
  if (d == 3) {
    if (out.final_distance > 0) {
      throw GenerationError("bootstrap_target_rewire: 2K stage stopped at D2 = " + std::to_string(out.final_distance));
    }
    RewireResult stage = target_rewire(out.graph, 2, target, derive_seed(seed, 2), options);
    out.graph = std::move(stage.graph);
    out.final_distance = static_cast<std::uint64_t>(stage.trace.final_value);
    out.stages.push_back(std::move(stage.trace));
  }
  return out;
}

}  // namespace dk
