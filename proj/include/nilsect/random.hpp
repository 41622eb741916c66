#pragma once

#include <cstdint>
#include <random>

namespace nilsect {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi], the same stream on every platform.
inline std::int64_t draw(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

inline bool coin(Rng& rng) { return (rng() >> 11) & 1U; }

}  // namespace nilsect
