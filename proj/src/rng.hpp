#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace volkit {

// 64-bit finalizer used for seeding and sub-stream derivation.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// xoshiro256++ with all derived draws (uniform, normal, gamma) spelled out
// on top of the raw 64-bit output, so a seed reproduces the exact same
// stream on any platform. Sub-streams are derived by hashing a name or an
// index into the seed; every sampler stage gets its own named stream.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed) {
    uint64_t sm = seed;
    for (auto& w : state_) w = splitmix64(sm);
  }

  uint64_t seed() const { return seed_; }

  Rng substream(std::string_view name) const {
    uint64_t mix = seed_;
    uint64_t h = fnv1a64(name);
    uint64_t tmp = splitmix64(mix) ^ h;
    return Rng(splitmix64(tmp));
  }

  Rng substream(uint64_t index) const {
    uint64_t mix = seed_ ^ (index * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL);
    return Rng(splitmix64(mix));
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller (cosine branch).
  double gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  // Gamma(shape, scale 1) by Marsaglia-Tsang squeeze; shape < 1 boosted.
  double gamma(double shape) {
    if (shape < 1.0) {
      const double u = uniform();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = gaussian();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      const double u = uniform();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
  }

  // Inverse-gamma(shape, scale): scale / Gamma(shape, 1).
  double inverse_gamma(double shape, double scale) { return scale / gamma(shape); }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t seed_;
  uint64_t state_[4];
};

}  // namespace volkit
