#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace nomauth {

// Deterministic random stream (xoshiro256++ seeded through splitmix64).
// The standard <random> engines are portable but the distributions are not,
// and campaign reproducibility is specified down to output bytes, so the
// uniform/Gaussian transforms are pinned here.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
  }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Stable hash used to derive per-trial and per-purpose substreams.
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a ^ (0x9E3779B97F4A7C15ull + (b << 1));
    std::uint64_t h = splitmix64(x);
    x ^= b + 0x632BE59BD9B4E019ull;
    return h ^ splitmix64(x);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0,1) with 53 random bits.
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n); rejection keeps it unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

  // Marsaglia polar method: two independent standard normals per call.
  void gauss_pair(double& a, double& b) {
    double u, v, s;
    do {
      u = 2.0 * u01() - 1.0;
      v = 2.0 * u01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    a = u * m;
    b = v * m;
  }

  // Circularly symmetric complex Gaussian with total variance `var`.
  std::complex<double> cgauss(double var = 1.0) {
    double a, b;
    gauss_pair(a, b);
    const double s = std::sqrt(var * 0.5);
    return {a * s, b * s};
  }

  // Child stream decorrelated from this one; used to give each consumer
  // (channel, codebook, noise, ...) its own draw sequence.
  RngStream fork(std::uint64_t tag) const {
    return RngStream(mix(mix(state_[0], state_[3]), mix(tag, state_[1])));
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t state_[4];
};

}  // namespace nomauth
