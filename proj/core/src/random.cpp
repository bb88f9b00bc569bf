#include "dk/random.hpp"

namespace dk {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

std::uint64_t Rng::below(std::uint64_t bound) {
  // Lemire's multiply-shift with rejection of the biased low range.
  u128 product = static_cast<u128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      product = static_cast<u128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  // master + index * golden is injective in index for a fixed master, and
  // splitmix64 is a bijection, so seeds within one ensemble never collide.
  return splitmix64(master + index * 0x9E3779B97F4A7C15ULL);
}

}  // namespace dk
