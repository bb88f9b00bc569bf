#pragma once

#include <cstdint>
#include <stdexcept>

#include "dk/dk_series.hpp"

namespace dk::detail {

// Degrees are packed into 64-bit keys; 21 bits per degree covers any graph
// that fits in memory here.
inline constexpr Degree kMaxPackedDegree = (Degree{1} << 21) - 1;

inline void check_packable(std::size_t max_degree) {
  if (max_degree > kMaxPackedDegree) throw std::invalid_argument("rewiring: node degree too large");
}

inline std::uint64_t pack_joint(JointDegree key) noexcept {
  return (static_cast<std::uint64_t>(key.low) << 32) | key.high;
}
inline JointDegree unpack_joint(std::uint64_t key) noexcept {
  return {static_cast<Degree>(key >> 32), static_cast<Degree>(key & 0xffffffffu)};
}

inline std::uint64_t pack_triple(Degree a, Degree b, Degree c) noexcept {
  return (static_cast<std::uint64_t>(a) << 42) | (static_cast<std::uint64_t>(b) << 21) | c;
}
inline std::uint64_t pack_wedge(WedgeKey key) noexcept { return pack_triple(key.end_low, key.center, key.end_high); }
inline WedgeKey unpack_wedge(std::uint64_t key) noexcept {
  return {static_cast<Degree>(key >> 42), static_cast<Degree>((key >> 21) & kMaxPackedDegree),
          static_cast<Degree>(key & kMaxPackedDegree)};
}
inline std::uint64_t pack_triangle(TriangleKey key) noexcept { return pack_triple(key.k1, key.k2, key.k3); }

}  // namespace dk::detail
