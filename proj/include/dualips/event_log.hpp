// Poisson event logs: per map instance the event count is Poisson(rate*T)
// with i.i.d. uniform times; merged, time-sorted, and totally ordered by
// (timestamp, sequence_no) with sequence assigned at merge time so replay
// is deterministic even under timestamp collisions.
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dualips/family.hpp"
#include "dualips/rng.hpp"

namespace dualips {

struct Event {
  std::uint32_t instance;  // index into the family's map list
  double time;
  std::uint32_t seq;
};

struct EventLog {
  double horizon = 0;
  std::vector<Event> events;

  std::size_t size() const { return events.size(); }
};

inline EventLog sample_event_log(const RatedFamily& f, double horizon, std::uint64_t seed,
                                 std::uint64_t stream) {
  if (horizon < 0) throw std::invalid_argument("sample_event_log: negative horizon");
  Rng rng(seed, stream);
  EventLog log;
  log.horizon = horizon;
  for (std::uint32_t k = 0; k < f.maps.size(); ++k) {
    std::uint64_t n = rng.poisson(f.maps[k].rate * horizon);
    for (std::uint64_t e = 0; e < n; ++e) log.events.push_back({k, rng.real() * horizon, 0});
  }
  std::stable_sort(log.events.begin(), log.events.end(),
                   [](const Event& a, const Event& b) { return a.time < b.time; });
  for (std::uint32_t s = 0; s < log.events.size(); ++s) log.events[s].seq = s;
  return log;
}

// Time reversal: (m, t) -> (m_hat, T - t). Instance indices are preserved;
// pair the result with dualize_family(f, w). Sequence numbers are
// reassigned in the reversed order so the strict total order survives.
inline EventLog dualize_log(const EventLog& log) {
  EventLog out;
  out.horizon = log.horizon;
  out.events.reserve(log.events.size());
  for (auto it = log.events.rbegin(); it != log.events.rend(); ++it)
    out.events.push_back({it->instance, log.horizon - it->time, 0});
  std::stable_sort(out.events.begin(), out.events.end(),
                   [](const Event& a, const Event& b) { return a.time < b.time; });
  for (std::uint32_t s = 0; s < out.events.size(); ++s) out.events[s].seq = s;
  return out;
}

enum class Boundary {
  ClosedOpen,  // [from, to): the left-continuous flow
  OpenClosed   // (from, to]: the right-continuous flow
};

// Applies, in (time, seq) order, every event whose time falls in the
// requested window. On a finite torus this finite concatenation IS the
// flow, so the flow property holds exactly.
inline Configuration evolve(const Configuration& x, const EventLog& log, const RatedFamily& f,
                            double from, double to, Boundary boundary) {
  if (from < 0 || to > log.horizon || from > to)
    throw std::out_of_range("evolve: OutOfHorizon");
  Configuration out = x;
  auto first = (boundary == Boundary::OpenClosed)
                   ? std::upper_bound(log.events.begin(), log.events.end(), from,
                                      [](double t, const Event& e) { return t < e.time; })
                   : std::lower_bound(log.events.begin(), log.events.end(), from,
                                      [](const Event& e, double t) { return e.time < t; });
  for (auto it = first; it != log.events.end(); ++it) {
    if (boundary == Boundary::OpenClosed ? it->time > to : it->time >= to) break;
    f.maps[it->instance].map.apply_in_place(out);
  }
  return out;
}

}  // namespace dualips
