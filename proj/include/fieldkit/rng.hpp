#pragma once

// Self-contained PCG32 generator. The standard <random> engines are portable
// but the distributions are not (their output is implementation-defined), and
// seeded runs here must be bit-reproducible across toolchains.

#include <cmath>
#include <cstdint>

namespace fieldkit {

class Pcg32 {
 public:
  Pcg32() = default;
  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0) { reseed(seed, stream); }

  void reseed(std::uint64_t seed, std::uint64_t stream = 0) {
    state_ = 0u;
    inc_ = (stream << 1u) | 1u;
    next_u32();
    state_ += seed;
    next_u32();
  }

  std::uint32_t next_u32() {
    std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  std::uint64_t next_u64() {
    std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  // Uniform in [0, 1) with 24 bits of mantissa.
  float uniform() { return static_cast<float>(next_u32() >> 8) * 0x1.0p-24f; }

  // Uniform in [0, 1) with 53 bits of mantissa.
  double uniform_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform_double(double lo, double hi) { return lo + (hi - lo) * uniform_double(); }

  // Unbiased integer in [0, bound) via rejection.
  std::uint32_t uniform_int(std::uint32_t bound) {
    std::uint32_t threshold = (-bound) % bound;
    for (;;) {
      std::uint32_t r = next_u32();
      if (r >= threshold) return r % bound;
    }
  }

  // Standard normal via Box-Muller; consumes two uniforms per draw.
  double normal() {
    double u1 = 0.0;
    do {
      u1 = uniform_double();
    } while (u1 <= 0.0);
    double u2 = uniform_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::uint64_t state_ = 0x853c49e6748fea9bULL;
  std::uint64_t inc_ = 0xda3e39cb94b95bdbULL;
};

// Stable 64-bit mix, used to derive per-item streams from a master seed.
inline std::uint64_t hash_mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace fieldkit
