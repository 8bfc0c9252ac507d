// Exact probability that X_t agrees with a local pattern on a window.
#pragma once

#include <cstdint>
#include <vector>

#include "dualips/exact/transient.hpp"

namespace dualips {

inline double pattern_positivity(const Configuration& x, const std::vector<long long>& window,
                                 const std::vector<Elem>& pattern, const RatedFamily& f, double t,
                                 double eps = 1e-12,
                                 std::uint64_t state_cap = StateCodec::kDefaultCap) {
  if (window.size() != pattern.size())
    throw std::invalid_argument("pattern_positivity: window/pattern size mismatch");
  StateCodec codec(*f.lattice, *f.monoid, state_cap);
  SparseGenerator gen(f, codec);
  auto mu = transient(DistributionVector::point_mass(codec.state_count(), codec.encode(x)), gen, t,
                      eps);
  double p = 0;
  for (std::uint64_t s = 0; s < codec.state_count(); ++s) {
    if (mu.probabilities[s] == 0.0) continue;
    Configuration c = codec.decode(s);
    bool match = true;
    for (std::size_t k = 0; k < window.size() && match; ++k)
      match = (c.values[std::size_t(window[k])] == pattern[k]);
    if (match) p += mu.probabilities[s];
  }
  return p;
}

}  // namespace dualips
