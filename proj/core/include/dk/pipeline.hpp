#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dk/generators.hpp"
#include "dk/metrics.hpp"
#include "dk/rewiring.hpp"

namespace dk {

// Per-run seeds derive_seed(master, 0..count-1); pairwise distinct.
std::vector<std::uint64_t> ensemble_seeds(std::uint64_t master, std::size_t count);

// One run's named values, in a fixed order shared by all runs.
struct RunRecord {
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::optional<double>>> values;
};

struct MetricSummary {
  std::string name;
  std::size_t defined = 0;  // runs where the value exists
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single run
};

struct EnsembleSummary {
  std::size_t runs = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<MetricSummary> metrics;
};

// Reduces in run order, so the result does not depend on how runs were
// scheduled. Throws std::invalid_argument for zero runs or mismatched names.
EnsembleSummary summarize(std::span<const RunRecord> runs);

// The scalar panel of a report as record values (names from scalar_metrics).
std::vector<std::pair<std::string, std::optional<double>>> scalar_values(const MetricsReport& report);

std::string summary_to_json(const EnsembleSummary& summary);
std::string summary_to_text(const EnsembleSummary& summary);

struct CompareRow {
  std::string name;
  std::string symbol;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> delta;           // b - a
  std::optional<double> relative_delta;  // (b - a) / |a|; undefined for a = 0
};

struct CompareReport {
  std::vector<CompareRow> rows;
  // D_0..D_3 between the two graphs (mean over members against an ensemble).
  std::array<double, 4> distances{};
  std::size_t ensemble_size = 1;
};

// Side-by-side scalars. With several graphs on side B the B column is the
// ensemble mean of each scalar over the members where it is defined.
CompareReport compare(const Graph& a, std::span<const Graph> b, const ReportOptions& options = {});
CompareReport compare_reports(const MetricsReport& a, std::span<const MetricsReport> b,
                              const std::array<double, 4>& distances);

std::string compare_to_json(const CompareReport& report);
std::string compare_to_text(const CompareReport& report);

struct BootstrapResult {
  Graph graph;
  std::vector<RunTrace> stages;  // one per targeting stage
  std::uint64_t final_distance = 0;
};

// Builds a graph for a 1K/2K/3K target by rewiring: a 1K matching graph,
// then 2K-targeting 1K-preserving rewiring, then (3K targets) 3K-targeting
// 2K-preserving rewiring. Each stage runs with the given options and a seed
// derived from `seed`; the 2K stage always admits plateau moves. 3K targets
// must come from graphs without isolated nodes (see infer_two_k).
BootstrapResult bootstrap_target_rewire(const DkDistribution& target, std::uint64_t seed,
                                        const TargetOptions& options = {});

}  // namespace dk
