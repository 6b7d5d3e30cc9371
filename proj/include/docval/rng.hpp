#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace docval {

// Deterministic random primitives. Seeded runs must produce identical bits on
// every platform, so nothing here depends on implementation-defined library
// distributions; all draws are derived from a fixed 64-bit mixing function.

struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

// Combines a seed with stream labels so independent streams never collide.
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2)));
  g.next();
  return g.next() ^ b;
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix64(mix64(a, b), c);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  return mix64(mix64(a, b, c), d);
}

// Uniform in (0,1]; never returns 0 so it is safe inside log().
inline double u01(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

inline double next_u01(SplitMix64& g) { return u01(g.next()); }

// Standard normal via Box-Muller on two uniform draws.
inline double next_normal(SplitMix64& g) {
  double u1 = next_u01(g);
  double u2 = next_u01(g);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Unbiased bounded draw in [0, bound) by rejection from the top of the range.
inline std::uint64_t next_bounded(SplitMix64& g, std::uint64_t bound) {
  std::uint64_t threshold = (0ULL - bound) % bound;
  for (;;) {
    std::uint64_t r = g.next();
    if (r >= threshold) return r % bound;
  }
}

// In-place Fisher-Yates shuffle with our own engine so permutations are
// reproducible across standard libraries.
template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& g) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(next_bounded(g, i));
    std::swap(items[i - 1], items[j]);
  }
}

inline std::vector<int> random_permutation(int n, SplitMix64& g) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  shuffle(p, g);
  return p;
}

// Random point on the unit sphere in `dim` dimensions.
inline std::vector<double> random_unit_vector(int dim, SplitMix64& g) {
  std::vector<double> v(static_cast<std::size_t>(dim));
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& x : v) {
      x = next_normal(g);
      norm2 += x * x;
    }
  } while (norm2 <= 0.0);
  double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : v) x *= inv;
  return v;
}

}  // namespace docval
