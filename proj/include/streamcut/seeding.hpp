#pragma once

#include <cstdint>

namespace streamcut {

// SplitMix64 finalizer; decorrelates seeds derived from one user seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent sub-seeds of one run seed.
enum class SeedPurpose : std::uint64_t { Graph = 1, Order = 2, Run = 3, Rounding = 4 };

constexpr std::uint64_t derive_seed(std::uint64_t seed, SeedPurpose purpose) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(purpose)));
}

}  // namespace streamcut
