#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lje {

// mt19937_64 output is fixed by the standard, so trajectories are reproducible
// across toolchains as long as we do our own conversion to reals.
using Rng = std::mt19937_64;

/// Uniform draw on the open interval (0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double exponential(Rng& rng, double rate) {
  return -std::log(uniform01(rng)) / rate;
}

__extension__ using uint128 = unsigned __int128;

/// Uniform integer in [0, n).
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  // Lemire's multiply-shift; bias is below 2^-64 * n, irrelevant here.
  return static_cast<std::uint64_t>((static_cast<uint128>(rng()) * n) >> 64);
}

/// SplitMix64 finalizer; maps (base seed, stream index) to decorrelated stream seeds.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Rng make_stream(std::uint64_t seed) { return Rng(derive_seed(seed, 0)); }

}  // namespace lje
