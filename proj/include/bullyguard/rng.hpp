#pragma once
// Thin reproducible draws over std::mt19937_64. The standard distribution
// classes are implementation-defined, so generated workloads would differ
// across toolchains; these fixed mappings keep traces bit-identical
// everywhere for a given seed.

#include <cstdint>
#include <random>

namespace bullyguard {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// inclusive bounds
inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo,
                                std::int64_t hi) {
  std::int64_t span = hi - lo + 1;
  auto draw = static_cast<std::int64_t>(uniform01(rng) * static_cast<double>(span));
  if (draw >= span) draw = span - 1;
  return lo + draw;
}

inline bool bernoulli(std::mt19937_64& rng, double p) {
  return uniform01(rng) < p;
}

}  // namespace bullyguard
