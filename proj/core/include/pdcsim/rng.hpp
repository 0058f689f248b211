#ifndef PDCSIM_RNG_HPP
#define PDCSIM_RNG_HPP

#include <cmath>
#include <cstdint>

#include "pdcsim/errors.hpp"

namespace pdcsim::rng {

// SplitMix64 step (Steele, Lea, Flood 2014). Full 2^64 period, passes
// standard statistical batteries, and cheap enough to re-seed per event.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based substream: the state is derived from (seed, stream) alone,
// so pulse i of a Monte-Carlo run always sees the same sequence no matter
// how pulses are distributed over threads.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = stream ^ 0xD2B74407B1CE6E93ULL;
    std::uint64_t b = splitmix64(s);
    state_ = a ^ (b + 0x9E3779B97F4A7C15ULL);
    (void)next_u64();  // decorrelate nearby (seed, stream) pairs
  }

  std::uint64_t next_u64() { return splitmix64(state_); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Standard normal via Box-Muller; consumes two uniforms per call.
  double gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    // avoid log(0)
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTau * u2);
  }

  // Photon number of a thermal mode with the given mean:
  // P(n) = mean^n / (1 + mean)^(n+1), sampled by inverting the CDF
  // 1 - q^(n+1) with q = mean / (1 + mean).
  long geometric_photon_number(double mean);

  // Binomial by explicit Bernoulli trials; photon counts here are small.
  long binomial(long n, double p) {
    long k = 0;
    for (long i = 0; i < n; ++i) k += bernoulli(p) ? 1 : 0;
    return k;
  }

 private:
  static constexpr double kTau = 6.283185307179586;
  std::uint64_t state_;
};

// Thermal photon-number sampler with the log precomputed; one uniform per
// draw, bit-identical to Stream::geometric_photon_number for the same mean.
class GeometricSampler {
 public:
  explicit GeometricSampler(double mean)
      : vacuum_(mean <= 0.0),
        p_zero_(vacuum_ ? 1.0 : 1.0 / (1.0 + mean)),
        log_q_(vacuum_ ? -1.0 : std::log(mean) - std::log1p(mean)) {}

  double mean_zero_probability() const { return p_zero_; }

  long sample(Stream& stream) const {
    const double u = stream.uniform();
    if (vacuum_ || u < p_zero_) return 0;  // CDF(0) = 1 - q = p_zero
    const double x = std::log1p(-u) / log_q_;  // real solution of q^x = 1-u
    long n = static_cast<long>(std::ceil(x)) - 1;
    return n < 0 ? 0 : n;
  }

 private:
  bool vacuum_;
  double p_zero_;
  double log_q_;
};

inline long Stream::geometric_photon_number(double mean) {
  return GeometricSampler(mean).sample(*this);
}

}  // namespace pdcsim::rng

#endif
