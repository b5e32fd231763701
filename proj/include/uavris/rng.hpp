#pragma once

#include <cstdint>
#include <random>

namespace uavris {

using Rng = std::mt19937_64;

enum class RngStream : std::uint32_t { Users = 1, Obstacles = 2, Fading = 3 };

/// Independent, reproducible stream per (seed, purpose).
inline Rng make_rng(std::uint64_t seed, RngStream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

}  // namespace uavris
