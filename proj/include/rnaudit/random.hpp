#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rnaudit {

using Rng = std::mt19937_64;

/// splitmix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a; stable across platforms, unlike std::hash.
constexpr std::uint64_t hash_id(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b));
}
constexpr std::uint64_t derive_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return derive_seed(derive_seed(a, b), c);
}
constexpr std::uint64_t derive_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                                    std::uint64_t d) {
  return derive_seed(derive_seed(a, b, c), d);
}

// The std distributions are implementation-defined; these two are not, which
// keeps seeded outputs identical across standard libraries.

/// Uniform double in [0, 1).
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n), n > 0. Rejection removes modulo bias.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

}  // namespace rnaudit
