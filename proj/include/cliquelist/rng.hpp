#pragma once

#include <cstdint>
#include <random>

namespace cliquelist {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream for (seed, stream id), e.g. one per node or per protocol phase.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  return Rng(mix_seed(mix_seed(seed) ^ mix_seed(stream + 0x5851f42d4c957f2dULL)));
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, bound); bound > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  // Rejection keeps the result exactly uniform and independent of the stdlib.
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace cliquelist
