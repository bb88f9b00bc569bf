#include "dk/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace dk {

std::vector<ScalarMetric> scalar_metrics(const MetricsReport& report) {
  return {
      {"kbar", "k̄", report.kbar},
      {"r", "r", report.r},
      {"cbar", "C̄", report.cbar},
      {"dbar", "d̄", report.dbar},
      {"sigma_d", "σ_d", report.sigma_d},
      {"s", "S", static_cast<double>(report.s)},
      {"s2", "S₂", static_cast<double>(report.s2)},
      {"lambda1", "λ₁", report.lambda1},
      {"lambda_max", "λ_{n-1}", report.lambda_max},
  };
}

std::string report_to_json(const MetricsReport& report) {
  nlohmann::ordered_json doc;
  doc["nodes"] = report.nodes;
  doc["edges"] = report.edges;
  doc["gcc_nodes"] = report.gcc_nodes;
  doc["gcc_edges"] = report.gcc_edges;
  for (const ScalarMetric& metric : scalar_metrics(report)) {
    if (metric.value) {
      doc[std::string(metric.name)] = *metric.value;
    } else {
      doc[std::string(metric.name)] = nullptr;
    }
  }
  // S and S2 are integers; keep them exact.
  doc["s"] = report.s;
  doc["s2"] = report.s2;
  return doc.dump(2) + "\n";
}

std::string format_number(double value, int precision) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", precision, value);
  return buffer;
}

namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

void write_report_csvs(const std::filesystem::path& dir, const MetricsReport& report) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_csv(dir / "distance_distribution.csv");
    out << "x,probability\n";
    for (const auto& [x, p] : report.distance_distribution) out << x << ',' << format_number(p, 17) << '\n';
  }
  {
    auto out = open_csv(dir / "clustering.csv");
    out << "k,C(k)\n";
    for (const auto& [k, c] : report.clustering_by_degree) out << k << ',' << format_number(c, 17) << '\n';
  }
  if (!report.betweenness.empty()) {
    auto out = open_csv(dir / "betweenness.csv");
    out << "node,value\n";
    for (std::size_t v = 0; v < report.betweenness.size(); ++v) {
      out << v << ',' << format_number(report.betweenness[v], 17) << '\n';
    }
  }
}

}  // namespace dk
