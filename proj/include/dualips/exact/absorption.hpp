// Exact absorption probability into the all-neutral state: linear solve of
// the hitting system restricted to the states reachable from the start. A
// singular system (recurrent class that cannot absorb, e.g. zero death
// rates) is reported and the probability is then bracketed by transient
// solves instead.
#pragma once

#include <cstdint>
#include <queue>
#include <unordered_map>
#include <vector>

#include "dualips/exact/transient.hpp"
#include "dualips/linalg.hpp"

namespace dualips {

struct AbsorptionResult {
  double probability = 0;
  bool singular = false;          // hit a recurrent non-absorbing class
  bool absorbing_unreachable = false;
  std::size_t reachable_states = 0;
};

inline AbsorptionResult absorption_probability(const Configuration& y, const RatedFamily& f,
                                               std::uint64_t state_cap = StateCodec::kDefaultCap) {
  StateCodec codec(*f.lattice, *f.monoid, state_cap);
  const std::uint64_t start = codec.encode(y);
  const std::uint64_t absorbing =
      codec.encode(Configuration::all_neutral(*f.lattice, *f.monoid));

  // BFS over map applications
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  std::vector<std::uint64_t> states;
  std::queue<std::uint64_t> frontier;
  auto visit = [&](std::uint64_t s) {
    if (index.count(s)) return;
    index.emplace(s, std::uint32_t(states.size()));
    states.push_back(s);
    frontier.push(s);
  };
  visit(start);
  while (!frontier.empty()) {
    std::uint64_t s = frontier.front();
    frontier.pop();
    Configuration xs = codec.decode(s);
    for (const auto& rm : f.maps) {
      std::uint64_t t = codec.encode(rm.map.apply(xs));
      if (t != s) visit(t);
    }
  }

  AbsorptionResult res;
  res.reachable_states = states.size();
  if (!index.count(absorbing)) {
    res.absorbing_unreachable = true;
    res.probability = start == absorbing ? 1.0 : 0.0;
    return res;
  }
  if (start == absorbing) {
    res.probability = 1.0;
    return res;
  }

  // order: non-absorbing reachable states
  std::vector<std::uint64_t> transient_states;
  std::unordered_map<std::uint64_t, std::uint32_t> tindex;
  for (std::uint64_t s : states)
    if (s != absorbing) {
      tindex.emplace(s, std::uint32_t(transient_states.size()));
      transient_states.push_back(s);
    }

  const std::size_t n = transient_states.size();
  if (n > 4096) throw std::length_error("absorption_probability: reachable set too large for dense solve");
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  std::vector<double> b(n, 0.0);
  for (std::size_t row = 0; row < n; ++row) {
    Configuration xs = codec.decode(transient_states[row]);
    double out = 0;
    std::unordered_map<std::uint64_t, double> flows;
    for (const auto& rm : f.maps) {
      std::uint64_t t = codec.encode(rm.map.apply(xs));
      if (t != transient_states[row]) flows[t] += rm.rate;
    }
    for (const auto& [t, rate] : flows) {
      out += rate;
      if (t == absorbing)
        b[row] -= rate;
      else
        a[row][tindex[t]] += rate;
    }
    a[row][row] -= out;
  }

  std::vector<double> h;
  if (!lu_solve(a, b, h)) {
    res.singular = true;
    // fall back to the long-horizon transient mass on the absorbing state
    SparseGenerator gen(f, codec);
    auto mu = DistributionVector::point_mass(codec.state_count(), start);
    double t = 1.0, prev = -1.0, cur = 0.0;
    for (int it = 0; it < 40; ++it) {
      auto m = transient(mu, gen, t, 1e-12);
      cur = m.probabilities[absorbing];
      if (prev >= 0 && std::fabs(cur - prev) < 1e-9) break;
      prev = cur;
      t *= 2.0;
    }
    res.probability = cur;
    return res;
  }
  res.probability = h[tindex[start]];
  return res;
}

}  // namespace dualips
