#pragma once

// Portable draws on top of std::mt19937_64. The standard distributions are
// implementation-defined, which would make model files differ between
// standard libraries.

#include <cstdint>
#include <random>

namespace spliceca {

using Rng = std::mt19937_64;

/// splitmix64 finaliser; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for the stream identified by (seed, a, b).
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(mix64(mix64(seed) ^ a) ^ (b + 0x632be59bd9b4e019ULL));
}

/// Uniform double in [0,1).
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, n) by rejection.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

}  // namespace spliceca
