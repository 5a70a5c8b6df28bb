#pragma once

#include <cstdint>

namespace modcsp {

// The i-th output of a SplitMix64 stream started at `seed`. Stateless, so
// trial k can be regenerated independently of trials before it.
constexpr std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t i) noexcept {
  std::uint64_t z = seed + (i + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace modcsp
