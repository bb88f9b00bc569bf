#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dk/dk_series.hpp"
#include "dk/generators.hpp"
#include "dk/graph.hpp"
#include "dk/random.hpp"

namespace dk::detail {

// Node ids grouped by degree: class i holds nodes
// [offset[i], offset[i] + size[i]), all of degree degree[i], ascending.
struct DegreeLayout {
  std::vector<Degree> degree;
  std::vector<NodeId> offset;
  std::vector<std::size_t> size;
  std::size_t num_nodes = 0;

  std::size_t class_of(Degree k) const;  // throws std::out_of_range
};

DegreeLayout make_layout(const OneK& dist);

// Simple graph from a raw pairing; fills the cleanup counters of `out`.
void collapse_multigraph(std::size_t num_nodes, const std::vector<Edge>& raw, GenOutcome& out);

struct MatchingProblem {
  std::size_t num_nodes = 0;
  // One entry per free slot (a node repeated deg times) per slot class.
  std::vector<std::vector<NodeId>> pools;
  // Each job places one edge between a slot of pools[first] and of pools[second].
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  std::size_t max_degree = 0;
};

GenOutcome run_matching(const MatchingProblem& problem, Rng& rng, const MatchingOptions& options);

}  // namespace dk::detail
