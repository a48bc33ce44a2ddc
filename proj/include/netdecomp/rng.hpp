#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace netdecomp {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based stream splitting: the child seed depends only on the master
/// seed and the path of counters, never on execution order.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(master);
  for (std::uint64_t c : path) s = splitmix64(s ^ splitmix64(c + 0x632be59bd9b4e019ULL));
  return s;
}

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from raw engine bits so streams are
/// identical across standard library implementations.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  // Lemire-style rejection keeps the draw unbiased.
  std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace netdecomp
