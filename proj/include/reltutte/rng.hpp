#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace reltutte {

/// SplitMix64 step; used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t seed = 0) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL ^ splitmix64(seed);
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Seeded generator with a fully specified draw rule so that instance
/// streams are reproducible across standard libraries: every draw is one
/// mt19937_64 output reduced modulo the range size.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform-ish integer in [lo, hi] (inclusive).
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  bool coin(std::uint64_t numerator, std::uint64_t denominator) { return engine_() % denominator < numerator; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace reltutte
