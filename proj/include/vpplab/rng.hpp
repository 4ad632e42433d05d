#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace vpplab {

// splitmix64, used for seed derivation and hashing. Stable across platforms.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t hash_combine(uint64_t a, uint64_t b) {
  uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  return splitmix64(s);
}

// xoshiro256++ with splitmix64 seeding. We avoid std:: distributions so that
// sampled values are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) { reseed(seed); }

  void reseed(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Integer in [0, n).
  uint64_t below(uint64_t n) { return n ? next_u64() % n : 0; }

  // Standard normal via Box-Muller. No spare caching so the draw count per
  // call is fixed, which keeps independent streams reproducible.
  double normal01() {
    double u1 = uniform01();
    double u2 = uniform01();
    if (u1 <= 0.0) u1 = std::numeric_limits<double>::min();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal01(); }

  // Truncated normal on [lo, hi] by rejection, falling back to clamping
  // after a bounded number of attempts (keeps draws per call bounded).
  double truncated_normal(double mean, double stddev, double lo, double hi) {
    for (int i = 0; i < 64; ++i) {
      double x = normal(mean, stddev);
      if (x >= lo && x <= hi) return x;
    }
    double x = normal(mean, stddev);
    return x < lo ? lo : (x > hi ? hi : x);
  }

  double exponential(double mean) {
    double u = 1.0 - uniform01();
    if (u <= 0.0) u = std::numeric_limits<double>::min();
    return -mean * std::log(u);
  }

  // Knuth for small means, normal approximation above; deterministic.
  uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 60.0) {
      double l = std::exp(-mean);
      uint64_t k = 0;
      double p = 1.0;
      do {
        ++k;
        p *= uniform01();
      } while (p > l);
      return k - 1;
    }
    double x = normal(mean, std::sqrt(mean));
    return x < 0.0 ? 0 : static_cast<uint64_t>(x + 0.5);
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

}  // namespace vpplab
