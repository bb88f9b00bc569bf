#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "dk/graph.hpp"

namespace dk {

struct LoadedGraph {
  Graph graph;
  // original_ids[i] is the label node i carried in the input; ascending.
  std::vector<std::uint64_t> original_ids;
  std::size_t duplicate_edges = 0;
  std::size_t self_loops = 0;
};

// Reads "u v" pairs, one per line. '#' starts a comment line, blank lines are
// skipped, CRLF is accepted. Duplicates and self-loops are dropped and
// counted. Ids are compacted to 0..n-1 in ascending label order. Throws
// ParseError naming the line on anything that is not two non-negative
// integers.
LoadedGraph load_edge_list(std::istream& in);
LoadedGraph load_edge_list(const std::filesystem::path& path);

// One "min max" line per edge, LF endings, sorted. When `labels` is non-empty
// node i is written as labels[i].
void write_edge_list(std::ostream& out, const Graph& g, std::span<const std::uint64_t> labels = {});
void write_edge_list(const std::filesystem::path& path, const Graph& g,
                     std::span<const std::uint64_t> labels = {});

}  // namespace dk
