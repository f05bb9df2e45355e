#pragma once

#include <cstdint>
#include <random>

namespace nilcurv {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

/// Independent generator for sample `index` of a run seeded with `seed`.
/// Streams depend only on (seed, index), never on scheduling.
inline Rng stream_for(std::uint64_t seed, std::uint64_t index) {
  return Rng(mix64(mix64(seed) ^ mix64(index + 0x632BE59BD9B4E019ULL)));
}

}  // namespace nilcurv
