#pragma once

#include <cstdint>
#include <random>

namespace rwrc {

using Rng = std::mt19937_64;

/// Uniform draw on the open interval (0, 1) from the top 53 bits of one
/// engine output. Kept explicit so streams do not depend on the standard
/// library's distribution implementation.
inline double uniform_open(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Independent stream `stream` derived from a master seed.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

}  // namespace rwrc
