#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace dk {

// Seeded engine with platform-independent draws. Standard distributions are
// implementation-defined, so everything that must be byte-reproducible goes
// through these helpers instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1].
  double uniform_open_closed() { return 1.0 - uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; a bijection on 64-bit values.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Per-run seed for run `index` of an ensemble started from `master`. Distinct
// indices always give distinct seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

}  // namespace dk
