#pragma once

#include <cmath>
#include <cstdint>

namespace sddac {

// Counter-mode splitmix64: draw i of a stream is a pure function of
// (seed, i), so streams can be sampled at any index, in any order, from any
// thread, and reproduce bit-identically everywhere.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + (i + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline int bit_at(std::uint64_t seed, std::uint64_t i) {
  return static_cast<int>((splitmix64_at(seed, i) >> 32) & 1u);
}

// uniform in [0, 1), 53 random bits
inline double u53_at(std::uint64_t seed, std::uint64_t i) {
  return static_cast<double>(splitmix64_at(seed, i) >> 11) * 0x1p-53;
}

// standard normal via Box-Muller; consumes stream slots 2i and 2i+1
inline double normal_at(std::uint64_t seed, std::uint64_t i) {
  const double u1 = u53_at(seed, 2 * i) + 0x1p-54;  // keep log() off zero
  const double u2 = u53_at(seed, 2 * i + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
}

}  // namespace sddac
