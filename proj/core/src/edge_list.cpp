#include "dk/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "dk/errors.hpp"

namespace dk {

namespace {

constexpr std::string_view kSpace = " \t\r\v\f";

std::string_view next_token(std::string_view& rest) {
  const auto start = rest.find_first_not_of(kSpace);
  if (start == std::string_view::npos) {
    rest = {};
    return {};
  }
  rest.remove_prefix(start);
  const auto end = std::min(rest.find_first_of(kSpace), rest.size());
  std::string_view token = rest.substr(0, end);
  rest.remove_prefix(end);
  return token;
}

bool parse_id(std::string_view token, std::uint64_t& value) {
  if (token.empty()) return false;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  return ec == std::errc() && ptr == token.data() + token.size();
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  std::size_t self_loops = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = line;
    const auto first = rest.find_first_not_of(kSpace);
    if (first == std::string_view::npos || rest[first] == '#') continue;
    std::uint64_t u = 0, v = 0;
    const auto t1 = next_token(rest);
    const auto t2 = next_token(rest);
    if (!parse_id(t1, u) || !parse_id(t2, v) || !next_token(rest).empty()) {
      throw ParseError("expected two non-negative integer node ids, got '" + line + "'", line_no);
    }
    if (u == v) {
      ++self_loops;
      continue;
    }
    raw.emplace_back(std::min(u, v), std::max(u, v));
  }
  if (in.bad()) throw ParseError("read failure", line_no);

  LoadedGraph out;
  out.self_loops = self_loops;
  std::sort(raw.begin(), raw.end());
  const auto unique_end = std::unique(raw.begin(), raw.end());
  out.duplicate_edges = static_cast<std::size_t>(raw.end() - unique_end);
  raw.erase(unique_end, raw.end());

  auto& ids = out.original_ids;
  ids.reserve(raw.size() * 2);
  for (const auto& [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto compact = [&ids](std::uint64_t label) {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), label) - ids.begin());
  };

  out.graph = Graph(ids.size());
  for (const auto& [u, v] : raw) out.graph.add_edge(compact(u), compact(v));
  return out;
}

LoadedGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g, std::span<const std::uint64_t> labels) {
  if (!labels.empty() && labels.size() < g.num_nodes()) {
    throw std::invalid_argument("write_edge_list: fewer labels than nodes");
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
  rows.reserve(g.num_edges());
  for (const Edge& e : g.edges()) {
    std::uint64_t a = labels.empty() ? e.u : labels[e.u];
    std::uint64_t b = labels.empty() ? e.v : labels[e.v];
    rows.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(rows.begin(), rows.end());
  std::string buffer;
  for (const auto& [a, b] : rows) {
    buffer += std::to_string(a);
    buffer += ' ';
    buffer += std::to_string(b);
    buffer += '\n';
  }
  out << buffer;
}

void write_edge_list(const std::filesystem::path& path, const Graph& g,
                     std::span<const std::uint64_t> labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_edge_list(out, g, labels);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace dk
