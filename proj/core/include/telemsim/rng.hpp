#pragma once

#include <cmath>
#include <cstdint>

#include "telemsim/units.hpp"

namespace telemsim {

// splitmix64. All randomness in the simulator flows through this generator:
// the standard <random> distributions are implementation-defined, which would
// break the byte-identical-output guarantee across toolchains.
class Rng {
 public:
  explicit Rng(u64 seed) : state_(seed) {}

  u64 next() {
    u64 z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound). bound > 0. Lemire multiply-shift; the bias is
  // bound/2^64 and irrelevant at simulator scales.
  u64 below(u64 bound) {
    return static_cast<u64>((static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // Uniform in [lo, hi).
  u64 range(u64 lo, u64 hi) { return lo + below(hi - lo); }

  // Uniform double in [0, 1), 53-bit resolution.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

  // Standard normal via Box-Muller. Stateless on purpose (no cached spare):
  // callers re-derive streams per time slice and must not carry hidden state
  // across slice boundaries.
  double gaussian() {
    double u1 = unit();
    double u2 = unit();
    if (u1 <= 0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Number of Bernoulli(p) failures before the next success; used for
  // skip-sampling a thinned stream. Returns a huge value when p ~ 0.
  u64 geometric_skip(double p) {
    if (p >= 1.0) return 0;
    if (p <= 0.0) return UINT64_MAX;
    double u = unit();
    if (u <= 0) u = 0x1.0p-53;
    double g = std::floor(std::log(u) / std::log1p(-p));
    if (g >= 9.0e18) return UINT64_MAX;
    return static_cast<u64>(g);
  }

 private:
  u64 state_;
};

// Stable stream derivation: mixes words so that (seed, "tag position") spaces
// do not collide between unrelated consumers.
inline u64 mix_seed(u64 a, u64 b) {
  u64 z = a + 0x9e3779b97f4a7c15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline u64 mix_seed(u64 a, u64 b, u64 c) { return mix_seed(mix_seed(a, b), c); }

// FNV-1a, for deriving per-engine streams from their tags.
inline u64 hash_str(const char* s) {
  u64 h = 1469598103934665603ull;
  for (; *s; s++) h = (h ^ static_cast<unsigned char>(*s)) * 1099511628211ull;
  return h;
}

}  // namespace telemsim
