#pragma once

#include <cstdint>
#include <random>

namespace seqode {

// Deterministic uniform samplers built directly on the mt19937_64 bit
// stream. std::uniform_real_distribution is implementation-defined, which
// would break byte-identical reproducibility across standard libraries;
// these helpers are fully pinned by the engine specification.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + uniform01(gen) * (hi - lo);
}

inline std::int64_t uniform_index(std::mt19937_64& gen, std::int64_t n) {
  return static_cast<std::int64_t>(gen() % static_cast<std::uint64_t>(n));
}

}  // namespace seqode
