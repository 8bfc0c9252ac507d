// SplitMix64 counter streams. Every stochastic routine takes a (seed,
// stream) pair that fully determines its draws; replicas use their index
// as the stream. No global state, no standard-library distributions (their
// outputs are not pinned across implementations).
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace dualips {

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream)
      : state_(mix(mix(seed ^ 0x5851f42d4c957f2dULL) + mix(stream ^ 0x14057b7ef767814fULL))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // uniform in [0, 1), 53 bits
  double real() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in {0, ..., n-1}, small bias-free enough via 128-bit scaling
  std::uint64_t uniform_below(std::uint64_t n) {
    return std::uint64_t((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  double exponential(double rate) {
    if (rate <= 0) throw std::invalid_argument("Rng::exponential: rate must be positive");
    double u;
    do {
      u = real();
    } while (u == 0.0);
    return -std::log(u) / rate;
  }

  // Exact Poisson via products of uniforms, split into chunks so the
  // threshold exp(-mean) never leaves the normal double range.
  std::uint64_t poisson(double mean) {
    if (mean < 0) throw std::invalid_argument("Rng::poisson: negative mean");
    std::uint64_t total = 0;
    while (mean > 256.0) {
      total += poisson_knuth(256.0);
      mean -= 256.0;
    }
    return total + poisson_knuth(mean);
  }

  bool bernoulli(double p) { return real() < p; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t poisson_knuth(double mean) {
    if (mean == 0.0) return 0;
    const double threshold = std::exp(-mean);
    double p = 1.0;
    std::uint64_t k = 0;
    do {
      ++k;
      p *= real();
    } while (p > threshold);
    return k - 1;
  }

  std::uint64_t state_;
};

}  // namespace dualips
