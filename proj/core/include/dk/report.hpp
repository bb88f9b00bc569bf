#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dk/metrics.hpp"

namespace dk {

struct ScalarMetric {
  std::string_view name;    // machine name: kbar, r, cbar, ...
  std::string_view symbol;  // display symbol: k̄, r, C̄, ...
  std::optional<double> value;
};

// The scalar panel in display order: kbar, r, cbar, dbar, sigma_d, s, s2,
// lambda1, lambda_max.
std::vector<ScalarMetric> scalar_metrics(const MetricsReport& report);

// Scalars and component sizes; undefined values are null.
std::string report_to_json(const MetricsReport& report);

// distance_distribution.csv (x,probability), clustering.csv (k,C(k)) and,
// when present, betweenness.csv (node,value) inside `dir`.
void write_report_csvs(const std::filesystem::path& dir, const MetricsReport& report);

// Fixed-precision number formatting shared by text and CSV outputs.
std::string format_number(double value, int precision = 6);

}  // namespace dk
