#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dk/dk_series.hpp"

namespace dk {

// {"d": int, "n": int, ...} with one of
//   "kbar"                                 (d = 0)
//   "degree_counts"   {"k": count}         (d = 1)
//   "jdd_counts"      {"k1,k2": count}     (d = 2)
//   "wedge_counts", "triangle_counts"      (d = 3, keys "k1,k2,k3")
// 2K keys are low,high; wedge keys are end,center,end with end_low first;
// triangle keys are sorted. Serialization is deterministic, so
// to_json(from_json(to_json(x))) == to_json(x) byte for byte.
std::string to_json(const DkDistribution& dist);

// Throws ParseError on malformed documents or non-canonical keys.
DkDistribution distribution_from_json(std::string_view text);

void write_distribution(const std::filesystem::path& path, const DkDistribution& dist);
DkDistribution read_distribution(const std::filesystem::path& path);

}  // namespace dk
