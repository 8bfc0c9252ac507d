// Transient distributions by uniformization: mu_t = sum_k pois(k; Lt) mu P^k
// with P = I + Q/L, L the largest exit rate. The Poisson series is cut when
// the accumulated weight exceeds 1 - eps, so the discarded tail mass (and
// hence the total variation error before renormalization) is below eps.
// Large L*t horizons are split into substeps to keep exp(-L*t) in the
// normal double range; each substep gets an equal share of eps.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dualips/exact/generator.hpp"

namespace dualips {

struct DistributionVector {
  std::vector<double> probabilities;
  double error_bound = 0;
  int clipped = 0;  // entries below zero that were clipped (audit)

  static DistributionVector point_mass(std::uint64_t n, std::uint64_t state) {
    DistributionVector d;
    d.probabilities.assign(n, 0.0);
    d.probabilities[state] = 1.0;
    return d;
  }

  double sum() const {
    double s = 0;
    for (double p : probabilities) s += p;
    return s;
  }

  void normalize() {
    double s = 0;
    for (double& p : probabilities) {
      if (p < 0) {
        if (p < -1e-15) ++clipped;
        p = 0;
      }
      s += p;
    }
    if (s > 0)
      for (double& p : probabilities) p /= s;
  }
};

namespace detail {

inline std::vector<double> uniformized_step(const SparseGenerator& g,
                                            const std::vector<double>& mu, double t, double eps) {
  const double rate = g.max_exit_rate();
  if (rate == 0.0 || t == 0.0) return mu;
  const double m = rate * t;

  std::vector<double> result(mu.size(), 0.0);
  std::vector<double> term = mu;  // mu * P^k
  std::vector<double> scratch;

  double weight = std::exp(-m);
  double cumulative = weight;
  for (std::size_t i = 0; i < mu.size(); ++i) result[i] = weight * term[i];

  std::uint64_t k = 0;
  const std::uint64_t hard_cap = std::uint64_t(m + 60.0 * std::sqrt(m + 1.0) + 64);
  while (cumulative < 1.0 - eps && k < hard_cap) {
    ++k;
    // term <- term * P = term + (term * Q)/rate
    g.apply_transposed(term, scratch);
    for (std::size_t i = 0; i < term.size(); ++i) term[i] += scratch[i] / rate;
    weight *= m / double(k);
    cumulative += weight;
    for (std::size_t i = 0; i < term.size(); ++i) result[i] += weight * term[i];
  }
  return result;
}

}  // namespace detail

inline DistributionVector transient(const DistributionVector& mu0, const SparseGenerator& g,
                                    double t, double eps = 1e-12) {
  if (eps <= 0) throw std::invalid_argument("transient: eps must be positive");
  if (t < 0) throw std::invalid_argument("transient: negative time");
  DistributionVector out = mu0;
  const double m = g.max_exit_rate() * t;
  int steps = m > 256.0 ? int(std::ceil(m / 256.0)) : 1;
  const double step_t = t / steps;
  const double step_eps = eps / steps;
  for (int s = 0; s < steps; ++s)
    out.probabilities = detail::uniformized_step(g, out.probabilities, step_t, step_eps);
  out.error_bound = eps;
  out.normalize();
  return out;
}

}  // namespace dualips
