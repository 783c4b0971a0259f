#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace xidx {

// splitmix64, used to spread seeds and derive named substreams.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// All randomness in the engine flows from one master seed through named
// substreams, so independent stages never share state.
inline uint64_t substream_seed(uint64_t master, std::string_view name) {
  return splitmix64(master ^ fnv1a64(name));
}

inline uint64_t substream_seed(uint64_t master, std::string_view name, uint64_t index) {
  return splitmix64(splitmix64(master ^ fnv1a64(name)) + index);
}

// Deterministic RNG wrapper. std::*_distribution is implementation-defined,
// so the draw helpers here are spelled out explicitly.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(splitmix64(seed)) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, bound). bound must be > 0.
  uint64_t uniform(uint64_t bound) {
    // Rejection sampling over the top of the range keeps the draw unbiased.
    const uint64_t threshold = (0ULL - bound) % bound;
    for (;;) {
      uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform double in [0, 1).
  double uniform_real() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform_real(double lo, double hi) {
    return lo + (hi - lo) * uniform_real();
  }

  bool bernoulli(double p) { return uniform_real() < p; }

  // Standard normal via Box-Muller (polar form avoided to keep draw count fixed).
  double normal() {
    double u1 = uniform_real();
    double u2 = uniform_real();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace xidx
