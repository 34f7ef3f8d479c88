#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fpqc::rng {

// SplitMix64 mixing step.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Combines a master seed with up to three stream identifiers. Every work item
// (trial, state, draw, ...) gets its own substream, so results cannot depend
// on worker count or scheduling order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = splitmix64(master ^ 0x5851f42d4c957f2dull);
  s = splitmix64(s ^ a);
  s = splitmix64(s ^ b);
  s = splitmix64(s ^ c);
  return s;
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) { return Engine(splitmix64(seed)); }

// Uniform double in [0,1) with 53 bits. The standard distributions are
// implementation-defined, so all mappings from engine output are done here.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller on portable uniforms.
inline double standard_normal(Engine& eng) {
  const double u1 = (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
  const double u2 = uniform01(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

// Unbiased integer in [0, bound) by rejection; bound == 0 means the full
// 64-bit range.
inline std::uint64_t bounded_uint(Engine& eng, std::uint64_t bound) {
  if (bound == 0) return eng();
  const std::uint64_t min = (-bound) % bound;
  std::uint64_t r = eng();
  while (r < min) r = eng();
  return r % bound;
}

}  // namespace fpqc::rng
