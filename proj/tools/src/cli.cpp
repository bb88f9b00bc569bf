#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dk/dk_json.hpp"
#include "dk/edge_list.hpp"
#include "dk/errors.hpp"
#include "dk/generators.hpp"
#include "dk/metrics.hpp"
#include "dk/parallel.hpp"
#include "dk/pipeline.hpp"
#include "dk/report.hpp"
#include "dk/rewiring.hpp"
#include "json.hpp"

namespace dk::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// Failures carry the exit code they map to.
struct Failure : std::runtime_error {
  Failure(ExitCode c, const std::string& what) : std::runtime_error(what), code(c) {}
  ExitCode code;
};

[[noreturn]] void fail(ExitCode code, const std::string& what) { throw Failure(code, what); }

LoadedGraph load_graph(const std::string& path) {
  try {
    return load_edge_list(fs::path(path));
  } catch (const ParseError& e) {
    fail(kInput, path + ": " + e.what());
  } catch (const std::exception& e) {
    fail(kInput, e.what());
  }
}

DkDistribution load_distribution(const std::string& path) {
  try {
    return read_distribution(fs::path(path));
  } catch (const std::exception& e) {
    fail(kInput, path + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(kInput, "cannot write " + path.string());
  f << text;
}

std::string zero_pad(std::size_t index, std::size_t width) {
  std::string s = std::to_string(index);
  return std::string(width > s.size() ? width - s.size() : 0, '0') + s;
}

std::string format_value(const std::optional<double>& x) { return x ? format_number(*x) : "-"; }

std::string scalars_text(const MetricsReport& report) {
  std::ostringstream os;
  os << "nodes " << report.nodes << ", edges " << report.edges << " (GCC: " << report.gcc_nodes << " nodes, "
     << report.gcc_edges << " edges)\n";
  for (const ScalarMetric& m : scalar_metrics(report)) {
    std::string symbol(m.symbol);
    std::size_t points = 0;
    for (unsigned char ch : symbol) points += (ch & 0xC0) != 0x80;
    os << symbol << std::string(points < 8 ? 8 - points : 1, ' ') << format_value(m.value) << "\n";
  }
  return os.str();
}

std::string scalars_csv(const MetricsReport& report) {
  std::string out = "metric,value\n";
  for (const ScalarMetric& m : scalar_metrics(report)) {
    out += std::string(m.name) + "," + (m.value ? format_number(*m.value, 17) : "") + "\n";
  }
  return out;
}

std::string census_line(int d, const DkDistribution& dist) {
  std::ostringstream os;
  os << d << "K: ";
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ZeroK>) {
          os << "n = " << x.n << ", kbar = " << format_number(x.kbar);
        } else if constexpr (std::is_same_v<T, OneK>) {
          os << x.counts.size() << " degree classes";
        } else if constexpr (std::is_same_v<T, TwoK>) {
          os << x.counts.size() << " edge types, " << total_edges(x) << " edges";
        } else {
          Count wedges = 0, triangles = 0;
          for (const auto& [k, c] : x.wedges) wedges += c;
          for (const auto& [k, c] : x.triangles) triangles += c;
          os << wedges << " wedges, " << triangles << " triangles";
        }
      },
      dist);
  return os.str() + "\n";
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string input;
  std::vector<int> d;
  std::string out_dir;
  std::string format = "text";
  bool spectrum = true;
  bool betweenness = true;
};

void add_analyze(CLI::App& app, AnalyzeArgs& a) {
  auto* cmd = app.add_subcommand("analyze", "dK-distributions and the metric report of an edge list");
  cmd->add_option("input", a.input, "Edge list")->required();
  cmd->add_option("--d", a.d, "dK level to extract (repeatable; default 0-3)")->check(CLI::Range(0, 3));
  cmd->add_option("--out", a.out_dir, "Directory for dk<d>.json, report.json and CSVs");
  cmd->add_option("--format", a.format, "Standard output format")->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_flag("--spectrum,!--no-spectrum", a.spectrum, "Compute the Laplacian spectrum (default on)");
  cmd->add_flag("--betweenness,!--no-betweenness", a.betweenness, "Compute betweenness (default on)");
}

int run_analyze(AnalyzeArgs a, std::ostream& out) {
  const LoadedGraph loaded = load_graph(a.input);
  if (loaded.graph.num_edges() == 0) fail(kInput, a.input + ": empty graph");
  if (a.d.empty()) a.d = {0, 1, 2, 3};
  std::sort(a.d.begin(), a.d.end());
  a.d.erase(std::unique(a.d.begin(), a.d.end()), a.d.end());

  std::vector<DkDistribution> dists;
  for (int d : a.d) dists.push_back(extract(loaded.graph, d));
  const MetricsReport report = full_report(loaded.graph, {a.spectrum, a.betweenness, 0});

  if (!a.out_dir.empty()) {
    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    for (std::size_t i = 0; i < a.d.size(); ++i) write_distribution(dir / ("dk" + std::to_string(a.d[i]) + ".json"), dists[i]);
    write_text(dir / "report.json", report_to_json(report));
    write_report_csvs(dir, report);
  }

  if (a.format == "json") {
    Json doc;
    doc["report"] = Json::parse(report_to_json(report));
    Json dk = Json::object();
    for (std::size_t i = 0; i < a.d.size(); ++i) dk[std::to_string(a.d[i])] = Json::parse(to_json(dists[i]));
    doc["distributions"] = dk;
    out << doc.dump(2) << "\n";
  } else if (a.format == "csv") {
    out << scalars_csv(report);
  } else {
    out << scalars_text(report);
    for (std::size_t i = 0; i < a.d.size(); ++i) out << census_line(a.d[i], dists[i]);
  }
  return kOk;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string target;
  std::string method = "pseudograph";
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::string out_dir;
  std::string format = "text";
  std::string schedule;
  unsigned retries = MatchingOptions{}.retries;
  bool spectrum = false;
};

void add_generate(CLI::App& app, GenerateArgs& a) {
  auto* cmd = app.add_subcommand("generate", "Generate graphs from a dK-distribution");
  cmd->add_option("target", a.target, "Target distribution (JSON)")->required();
  cmd->add_option("--method", a.method, "Construction method")
      ->check(CLI::IsMember({"stochastic", "pseudograph", "matching", "target-rewire"}));
  cmd->add_option("--seed", a.seed, "Master seed");
  cmd->add_option("--count", a.count, "Number of graphs")->check(CLI::PositiveNumber);
  cmd->add_option("--out", a.out_dir, "Output directory")->required();
  cmd->add_option("--format", a.format, "Summary format on standard output")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--schedule", a.schedule, "Temperature schedule for target-rewire stages, \"T:steps,...\"");
  cmd->add_option("--retries", a.retries, "Matching restarts before giving up");
  cmd->add_flag("--spectrum,!--no-spectrum", a.spectrum, "Include Laplacian eigenvalues in the summary");
}

std::vector<std::pair<std::string, std::optional<double>>> metric_values(const Graph& g, bool spectrum) {
  if (g.num_edges() == 0) {
    auto values = scalar_values(MetricsReport{});
    for (auto& [name, value] : values) value.reset();
    values[0].second = static_cast<double>(g.num_nodes());
    values[1].second = 0.0;
    return values;
  }
  return scalar_values(full_report(g, {spectrum, false, 1}));
}

int run_generate(const GenerateArgs& a, std::ostream& out) {
  const DkDistribution target = load_distribution(a.target);
  const int d = order(target);
  const bool rewire = a.method == "target-rewire";
  const int lowest = a.method == "stochastic" ? 0 : 1;
  const int highest = rewire ? 3 : 2;
  if (d < lowest || d > highest) {
    fail(kUsage, "method " + a.method + " does not support " + std::to_string(d) + "K targets");
  }
  TargetOptions target_options;
  if (!a.schedule.empty()) {
    if (!rewire) fail(kUsage, "--schedule only applies to --method target-rewire");
    try {
      target_options.schedule = parse_schedule(a.schedule);
    } catch (const std::invalid_argument& e) {
      fail(kUsage, e.what());
    }
  }

  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  const std::vector<std::uint64_t> seeds = ensemble_seeds(a.seed, a.count);
  const std::size_t width = std::max<std::size_t>(4, std::to_string(a.count - 1).size());
  std::vector<RunRecord> records(a.count);
  std::vector<std::string> errors(a.count);
  std::vector<std::string> files(a.count);

  parallel_for_blocks(a.count, 0, [&](std::size_t i) {
    try {
      RunRecord& rec = records[i];
      rec.seed = seeds[i];
      Graph graph;
      if (rewire) {
        BootstrapResult result = bootstrap_target_rewire(target, seeds[i], target_options);
        rec.values.emplace_back("target_distance", static_cast<double>(result.final_distance));
        std::uint64_t proposals = 0;
        for (const RunTrace& t : result.stages) proposals += t.proposals;
        rec.values.emplace_back("rewiring_proposals", static_cast<double>(proposals));
        graph = std::move(result.graph);
      } else {
        GenSpec spec;
        spec.method = parse_gen_method(a.method);
        spec.target = target;
        spec.seed = seeds[i];
        spec.matching.retries = a.retries;
        GenOutcome o = generate(spec);
        double dist = 0.0;
        if (spec.method == GenMethod::kPseudograph) {
          // Exactness holds before cleanup, so measure the raw pairing.
          const std::size_t n = o.graph.num_nodes();
          dist = d == 1 ? distance(multigraph_1k(n, o.multigraph), target)
                        : distance(multigraph_2k(n, o.multigraph), target);
        } else {
          dist = distance(extract(o.graph, d), target);
        }
        rec.values.emplace_back("target_distance", dist);
        rec.values.emplace_back("removed_self_loops", static_cast<double>(o.removed_self_loops));
        rec.values.emplace_back("removed_multi_edges", static_cast<double>(o.removed_multi_edges));
        rec.values.emplace_back("restarts", static_cast<double>(o.restarts));
        rec.values.emplace_back("backtracks", static_cast<double>(o.backtracks));
        rec.values.emplace_back("clamped_pairs", static_cast<double>(o.clamped_pairs));
        graph = std::move(o.graph);
      }
      for (auto& v : metric_values(graph, a.spectrum)) rec.values.push_back(std::move(v));
      files[i] = "graph_" + zero_pad(i, width) + ".edges";
      write_edge_list(dir / files[i], graph);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < a.count; ++i) {
    if (!errors[i].empty()) fail(kGeneration, "run " + std::to_string(i) + " (seed " + std::to_string(seeds[i]) + "): " + errors[i]);
  }

  const EnsembleSummary summary = summarize(records);
  write_text(dir / "summary.json", summary_to_json(summary));
  Json runs = Json::array();
  for (std::size_t i = 0; i < a.count; ++i) {
    Json r;
    r["index"] = i;
    r["seed"] = records[i].seed;
    r["file"] = files[i];
    for (const auto& [name, value] : records[i].values) r[name] = value ? Json(*value) : Json(nullptr);
    runs.push_back(r);
  }
  write_text(dir / "runs.json", runs.dump(2) + "\n");

  if (a.format == "json") {
    out << summary_to_json(summary);
  } else if (a.format == "csv") {
    out << "metric,mean,stddev,defined\n";
    for (const MetricSummary& m : summary.metrics) {
      out << m.name << "," << format_number(m.mean, 17) << "," << format_number(m.stddev, 17) << "," << m.defined
          << "\n";
    }
  } else {
    out << summary_to_text(summary);
  }
  return kOk;
}

// ---------------------------------------------------------------- rewire

struct RewireArgs {
  std::string input;
  int d = -1;
  std::string mode;
  std::uint64_t seed = 0;
  std::string out;
  std::string trace;
  std::string format = "text";
  std::string schedule;
  std::string target;
  std::string objective;
  std::string direction;
  double multiplier = RandomizeOptions{}.multiplier;
  double verification_factor = RandomizeOptions{}.verification_factor;
  std::uint64_t budget = 0;
  std::uint64_t stall = 0;
  bool verify = true;
  bool plateau = false;
};

CLI::App* add_rewire_options(CLI::App* cmd, RewireArgs& a) {
  cmd->add_option("input", a.input, "Edge list")->required();
  cmd->add_option("--d", a.d, "Preserved dK level")->required()->check(CLI::Range(0, 3));
  cmd->add_option("--seed", a.seed, "RNG seed");
  cmd->add_option("--out", a.out, "Output edge list (default: standard output)");
  cmd->add_option("--trace", a.trace, "Trace CSV (default: <out>.trace.csv when --out is given)");
  cmd->add_option("--format", a.format, "Run summary format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--schedule", a.schedule, "target: temperature schedule \"T:steps,...\" (T may be inf)");
  cmd->add_option("--target", a.target, "target: target distribution (JSON)");
  cmd->add_option("--objective", a.objective, "explore: S, S2 or Cbar")->check(CLI::IsMember({"S", "S2", "Cbar"}));
  cmd->add_option("--direction", a.direction, "explore: min or max")->check(CLI::IsMember({"min", "max"}));
  cmd->add_option("--multiplier", a.multiplier, "randomize: budget factor")->check(CLI::NonNegativeNumber);
  cmd->add_option("--verification-factor", a.verification_factor, "randomize: extra swaps for the convergence check")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--budget", a.budget, "randomize: accepted swaps; explore: proposals");
  cmd->add_option("--stall", a.stall, "Proposals without progress before stopping (T = 0: without a strict decrease)");
  cmd->add_flag("--verify,!--no-verify", a.verify, "randomize: run the convergence check (default on)");
  cmd->add_flag("--plateau", a.plateau, "target: accept zero-change moves at T = 0");
  return cmd;
}

void add_rewire(CLI::App& app, RewireArgs& a) {
  auto* cmd = app.add_subcommand("rewire", "dK-preserving rewiring: randomize, target or explore");
  add_rewire_options(cmd, a);
  cmd->add_option("--mode", a.mode, "Rewiring mode")
      ->required()
      ->check(CLI::IsMember({"randomize", "target", "explore"}));
}

void add_explore(CLI::App& app, RewireArgs& a) {
  auto* cmd = app.add_subcommand("explore", "Shorthand for rewire --mode explore");
  add_rewire_options(cmd, a);
}

int run_rewire(const CLI::App& cmd, const RewireArgs& a, std::ostream& out, std::ostream& err) {
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  auto forbid = [&](std::initializer_list<const char*> names) {
    for (const char* name : names) {
      if (given(name)) fail(kUsage, std::string(name) + " is not valid with --mode " + a.mode);
    }
  };
  if (a.mode == "randomize") {
    forbid({"--schedule", "--target", "--objective", "--direction", "--plateau"});
  } else if (a.mode == "target") {
    forbid({"--objective", "--direction", "--multiplier", "--verification-factor", "--budget", "--verify",
            "--no-verify"});
    if (!given("--target")) fail(kUsage, "--mode target needs --target");
  } else {
    forbid({"--schedule", "--target", "--multiplier", "--verification-factor", "--plateau", "--verify",
            "--no-verify"});
    if (!given("--objective") || !given("--direction")) fail(kUsage, "--mode explore needs --objective and --direction");
  }

  TemperatureSchedule schedule;
  if (!a.schedule.empty()) {
    try {
      schedule = parse_schedule(a.schedule);
    } catch (const std::invalid_argument& e) {
      fail(kUsage, e.what());
    }
  }
  const LoadedGraph loaded = load_graph(a.input);
  std::optional<DkDistribution> target;
  if (a.mode == "target") target = load_distribution(a.target);

  RewireResult result;
  try {
    if (a.mode == "randomize") {
      RandomizeOptions o;
      o.multiplier = a.multiplier;
      o.verification_factor = a.verification_factor;
      if (a.budget) o.budget = a.budget;
      o.verify = a.verify;
      o.stall_window = a.stall;
      result = randomize(loaded.graph, a.d, a.seed, o);
    } else if (a.mode == "target") {
      TargetOptions o;
      o.schedule = schedule;
      o.stall_window = a.stall;
      o.allow_plateau = a.plateau;
      result = target_rewire(loaded.graph, a.d, *target, a.seed, o);
    } else {
      ExploreOptions o;
      o.budget = a.budget;
      o.probe_window = a.stall;
      result = explore(loaded.graph, a.d, parse_objective(a.objective), parse_direction(a.direction), a.seed, o);
    }
  } catch (const CapabilityError& e) {
    fail(kUsage, e.what());
  } catch (const std::invalid_argument& e) {
    fail(a.mode == "explore" ? kUsage : kInput, e.what());
  }

  for (const std::string& w : result.trace.warnings) err << "warning: " << w << "\n";

  const RunTrace& t = result.trace;
  std::string trace_path = a.trace;
  if (trace_path.empty() && !a.out.empty()) trace_path = a.out + ".trace.csv";
  if (!trace_path.empty()) write_text(trace_path, trace_to_csv(t));

  std::ostream& summary_stream = a.out.empty() ? err : out;
  if (a.out.empty()) {
    write_edge_list(out, result.graph, loaded.original_ids);
  } else {
    std::ostringstream edges;
    write_edge_list(edges, result.graph, loaded.original_ids);
    write_text(a.out, edges.str());
  }
  if (a.format == "json") {
    Json doc;
    doc["mode"] = a.mode;
    doc["d"] = a.d;
    doc["seed"] = a.seed;
    doc["proposals"] = t.proposals;
    doc["accepted"] = t.accepted;
    doc["rejected"] = t.rejected;
    doc["initial_value"] = t.initial_value;
    doc["final_value"] = t.final_value;
    doc["stalled"] = t.stalled;
    doc["converged"] = t.converged ? Json(*t.converged) : Json(nullptr);
    doc["warnings"] = t.warnings;
    summary_stream << doc.dump(2) << "\n";
  } else {
    summary_stream << a.mode << " d=" << a.d << ": " << t.accepted << " accepted / " << t.proposals
                   << " proposals";
    if (a.mode != "randomize") {
      summary_stream << ", value " << format_number(t.initial_value) << " -> " << format_number(t.final_value);
    }
    if (t.converged) summary_stream << (*t.converged ? ", converged" : ", not converged");
    summary_stream << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
  std::string a;
  std::string b;
  std::string out;
  std::string format = "text";
  bool spectrum = true;
};

void add_compare(CLI::App& app, CompareArgs& a) {
  auto* cmd = app.add_subcommand("compare", "Scalar metrics and dK distances of two graphs or a graph and an ensemble");
  cmd->add_option("a", a.a, "Edge list A")->required();
  cmd->add_option("b", a.b, "Edge list B, or a directory of *.edges files")->required();
  cmd->add_option("--out", a.out, "Write the JSON report here");
  cmd->add_option("--format", a.format, "Standard output format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_flag("--spectrum,!--no-spectrum", a.spectrum, "Include Laplacian eigenvalues (default on)");
}

int run_compare(const CompareArgs& a, std::ostream& out) {
  const LoadedGraph left = load_graph(a.a);
  std::vector<Graph> right;
  if (fs::is_directory(a.b)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(a.b)) {
      if (entry.is_regular_file() && entry.path().extension() == ".edges") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) fail(kInput, a.b + ": no .edges files");
    for (const auto& f : files) right.push_back(load_graph(f.string()).graph);
  } else {
    right.push_back(load_graph(a.b).graph);
  }
  if (left.graph.num_edges() == 0) fail(kInput, a.a + ": empty graph");
  for (const Graph& g : right) {
    if (g.num_edges() == 0) fail(kInput, a.b + ": empty graph");
  }

  ReportOptions options;
  options.spectrum = a.spectrum;
  options.betweenness = false;
  const CompareReport report = compare(left.graph, right, options);
  if (!a.out.empty()) write_text(a.out, compare_to_json(report));
  out << (a.format == "json" ? compare_to_json(report) : compare_to_text(report));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"dK-series topology analysis, generation and rewiring", "dktopo"};
  app.require_subcommand(1);
  AnalyzeArgs analyze_args;
  GenerateArgs generate_args;
  RewireArgs rewire_args;
  RewireArgs explore_args;
  explore_args.mode = "explore";
  CompareArgs compare_args;
  add_analyze(app, analyze_args);
  add_generate(app, generate_args);
  add_rewire(app, rewire_args);
  add_explore(app, explore_args);
  add_compare(app, compare_args);

  std::vector<const char*> argv;
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (app.got_subcommand("analyze")) return run_analyze(analyze_args, out);
    if (app.got_subcommand("generate")) return run_generate(generate_args, out);
    if (app.got_subcommand("rewire")) return run_rewire(*app.get_subcommand("rewire"), rewire_args, out, err);
    if (app.got_subcommand("explore")) return run_rewire(*app.get_subcommand("explore"), explore_args, out, err);
    if (app.got_subcommand("compare")) return run_compare(compare_args, out);
  } catch (const Failure& e) {
    err << "error: " << e.what() << "\n";
    return e.code;
  } catch (const GenerationError& e) {
    err << "error: " << e.what() << "\n";
    return kGeneration;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
  return kUsage;
}

}  // namespace dk::cli
