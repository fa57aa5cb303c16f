#pragma once

#include <cstdint>
#include <random>

namespace rcamon {

// splitmix64 finalizer; good avalanche, stateless.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic per-replication stream seed. Replication i always gets the
// same stream for a given base seed, no matter which thread runs it.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
  return mix64(base_seed ^ mix64(index));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

}  // namespace rcamon
