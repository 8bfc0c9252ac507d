// Wilson score intervals and mean confidence half-widths; 99% throughout.
#pragma once

#include <cmath>
#include <cstdint>

namespace dualips {

inline constexpr double kZ99 = 2.5758293035489004;  // two-sided 99% normal quantile

struct Proportion {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;

  double estimate() const { return trials ? double(successes) / double(trials) : 0.0; }

  // Wilson score interval half-width
  double wilson_halfwidth(double z = kZ99) const {
    if (trials == 0) return 1.0;
    double n = double(trials);
    double p = estimate();
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double half = (z / denom) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    return half;
  }
  double wilson_center(double z = kZ99) const {
    if (trials == 0) return 0.5;
    double n = double(trials);
    double z2 = z * z;
    return (estimate() + z2 / (2 * n)) / (1.0 + z2 / n);
  }
};

struct RunningMean {
  std::uint64_t n = 0;
  double sum = 0;
  double sumsq = 0;

  void add(double v) {
    ++n;
    sum += v;
    sumsq += v * v;
  }
  double mean() const { return n ? sum / double(n) : 0.0; }
  double variance() const {
    if (n < 2) return 0.0;
    double m = mean();
    double v = (sumsq - double(n) * m * m) / double(n - 1);
    return v > 0 ? v : 0.0;
  }
  double halfwidth(double z = kZ99) const {
    return n ? z * std::sqrt(variance() / double(n)) : 1.0;
  }
};

inline double combined_halfwidth(double a, double b) { return std::sqrt(a * a + b * b); }

}  // namespace dualips
