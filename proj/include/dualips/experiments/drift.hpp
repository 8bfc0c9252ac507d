// Exhaustive exact drift of the spread supermartingale for the 1-d
// cancellative process: for f = g + 4 (g = rightmost minus leftmost one,
// f(empty) = 0), enumerate every finite configuration anchored at the
// origin with diameter at most K and compute the generator applied to f in
// rational arithmetic.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualips/rational.hpp"

namespace dualips {

struct DriftReport {
  Rational max_drift;
  std::vector<std::string> argmax_patterns;
  bool all_nonpositive = false;
  std::size_t configurations = 0;
};

namespace detail {

// masks use bit positions 1..K for sites 0..K-1 so growth by one site in
// either direction stays inside the word
inline long long spread_f(std::uint64_t mask) {
  if (mask == 0) return 0;
  int lsb = __builtin_ctzll(mask);
  int msb = 63 - __builtin_clzll(mask);
  return (msb - lsb) + 4;
}

}  // namespace detail

// integer coefficients (a, b) with drift = a*lambda + b*delta
inline std::pair<long long, long long> drift_coefficients(std::uint64_t mask) {
  long long a = 0, b = 0;
  const long long f0 = detail::spread_f(mask);
  std::uint64_t rest = mask;
  while (rest) {
    int i = __builtin_ctzll(rest);
    rest &= rest - 1;
    // death at i
    b += detail::spread_f(mask & ~(std::uint64_t(1) << i)) - f0;
    // infection from i onto each neighbor flips the target bit
    a += detail::spread_f(mask ^ (std::uint64_t(1) << (i - 1))) - f0;
    a += detail::spread_f(mask ^ (std::uint64_t(1) << (i + 1))) - f0;
  }
  return {a, b};
}

inline std::string pattern_of(std::uint64_t mask) {
  if (mask == 0) return "0";
  int lsb = __builtin_ctzll(mask);
  int msb = 63 - __builtin_clzll(mask);
  std::string s;
  for (int i = lsb; i <= msb; ++i) s += (mask >> i) & 1 ? '1' : '0';
  return s;
}

inline Rational drift_of_mask(std::uint64_t mask, const Rational& lambda, const Rational& delta) {
  auto [a, b] = drift_coefficients(mask);
  return lambda * a + delta * b;
}

inline DriftReport drift_enumeration(int window, const Rational& lambda, const Rational& delta) {
  if (window < 1 || window > 20)
    throw std::invalid_argument("drift_enumeration: window must be in 1..20");
  DriftReport rep;
  bool first = true;
  auto consider = [&](std::uint64_t mask) {
    ++rep.configurations;
    Rational d = drift_of_mask(mask, lambda, delta);
    if (first || d > rep.max_drift) {
      rep.max_drift = d;
      rep.argmax_patterns.clear();
      first = false;
    }
    if (d == rep.max_drift) rep.argmax_patterns.push_back(pattern_of(mask));
  };

  consider(std::uint64_t(1) << 1);  // the single site
  for (int w = 2; w <= window; ++w) {
    std::uint64_t endpoints = (std::uint64_t(1) << 1) | (std::uint64_t(1) << w);
    std::uint64_t interior_bits = w - 2;
    for (std::uint64_t interior = 0; interior < (std::uint64_t(1) << interior_bits); ++interior)
      consider(endpoints | (interior << 2));
  }
  rep.all_nonpositive = !(rep.max_drift > Rational(0));
  return rep;
}

}  // namespace dualips
