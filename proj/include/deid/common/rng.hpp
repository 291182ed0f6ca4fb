#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "deid/common/text.hpp"

namespace deid {

using Rng = std::mt19937_64;

/// Independent generator for a named sub-stream ("init", "shuffle", "dropout", "synth", ...).
inline Rng make_stream(std::uint64_t seed, std::string_view name) {
  const std::uint64_t h = fnv1a64(name);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return Rng(seq);
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace deid
