// Trajectories, observables, and the per-trajectory pathwise duality
// check: along one coupled realization the pairing of the forward state at
// s with the left-limit dual state at T-s is a single constant element,
// checked at both one-sided limits of every event time (the function of s
// is piecewise constant, so those checkpoints are exhaustive).
#pragma once

#include <limits>
#include <string>
#include <vector>

#include "dualips/configuration.hpp"
#include "dualips/event_log.hpp"
#include "dualips/family.hpp"

namespace dualips {

struct Trajectory {
  Configuration initial;
  std::vector<double> times;
  std::vector<Configuration> snapshots;
};

inline Trajectory make_trajectory(const Configuration& x0, const EventLog& log,
                                  const RatedFamily& f, const std::vector<double>& times) {
  Trajectory t;
  t.initial = x0;
  Configuration cur = x0;
  double prev = 0;
  for (double s : times) {
    cur = evolve(cur, log, f, prev, s, Boundary::OpenClosed);
    prev = s;
    t.times.push_back(s);
    t.snapshots.push_back(cur);
  }
  return t;
}

// --- observables ---------------------------------------------------------

// occupied counts per coordinate for U-configurations, plain count otherwise
inline std::vector<long long> occupied_counts(const Configuration& x) {
  const Builtins& b = builtins();
  if (x.monoid == &b.u || x.monoid->same_structure(b.u)) {
    long long c1 = 0, c2 = 0;
    for (Elem v : x.values) {
      c1 += (v >> 1) & 1;
      c2 += v & 1;
    }
    return {c1, c2};
  }
  return {x.occupied_count()};
}

inline bool probe_parity_odd(const Configuration& x, const std::vector<long long>& probe_sites) {
  // parity of the intersection with the probe, on the second coordinate
  // for U-configurations and on the value itself for single-bit ones
  const Builtins& b = builtins();
  bool is_u = (x.monoid == &b.u || x.monoid->same_structure(b.u));
  int par = 0;
  for (long long s : probe_sites) {
    Elem v = x.values[std::size_t(s)];
    par ^= is_u ? (v & 1) : (v != x.monoid->neutral() ? 1 : 0);
  }
  return par != 0;
}

struct SpreadResult {
  bool extinct = false;  // all-neutral: the spread is undefined, f = 0
  long long g = 0;       // max occupied index - min occupied index
  long long f = 0;       // g + 4 on nonzero states, 0 on the empty one
};

inline SpreadResult spread(const Configuration& x) {
  if (x.lattice->dim() != 1) throw std::invalid_argument("spread: defined for d=1 only");
  long long lo = std::numeric_limits<long long>::max(), hi = -1;
  for (long long i = 0; i < x.lattice->site_count(); ++i)
    if (x.values[std::size_t(i)] != x.monoid->neutral()) {
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
  if (hi < 0) return {true, 0, 0};
  return {false, hi - lo, hi - lo + 4};
}

struct ObservableRequest {
  bool occupied_counts = true;
  std::vector<long long> parity_probe;  // empty: skip the parity series
  bool spread = false;                  // d = 1 only
  bool order_flag = false;
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<std::pair<std::string, std::vector<double>>> series;

  const std::vector<double>* find(const std::string& name) const {
    for (const auto& [n, v] : series)
      if (n == name) return &v;
    return nullptr;
  }
};

// Samples the requested observables at the trajectory's snapshot times.
// The spread of the empty configuration is undefined; those slots carry
// the extinct marker (spread_extinct = 1, g = -1, f = 0).
inline TimeSeries observe(const Trajectory& traj, const ObservableRequest& req) {
  TimeSeries out;
  out.times = traj.times;
  if (req.occupied_counts) {
    std::size_t coords = occupied_counts(traj.initial).size();
    for (std::size_t c = 0; c < coords; ++c) {
      std::vector<double> v;
      for (const auto& snap : traj.snapshots) v.push_back(double(occupied_counts(snap)[c]));
      out.series.emplace_back(coords == 1 ? "occupied" : "occupied_" + std::to_string(c + 1),
                              std::move(v));
    }
  }
  if (!req.parity_probe.empty()) {
    std::vector<double> v;
    for (const auto& snap : traj.snapshots)
      v.push_back(probe_parity_odd(snap, req.parity_probe) ? 1.0 : 0.0);
    out.series.emplace_back("parity_odd", std::move(v));
  }
  if (req.spread) {
    std::vector<double> g, f, ext;
    for (const auto& snap : traj.snapshots) {
      auto s = ::dualips::spread(snap);
      g.push_back(s.extinct ? -1.0 : double(s.g));
      f.push_back(double(s.f));
      ext.push_back(s.extinct ? 1.0 : 0.0);
    }
    out.series.emplace_back("spread_g", std::move(g));
    out.series.emplace_back("spread_f", std::move(f));
    out.series.emplace_back("spread_extinct", std::move(ext));
  }
  if (req.order_flag) {
    std::vector<double> v;
    for (const auto& snap : traj.snapshots) v.push_back(order_holds(snap) ? 1.0 : 0.0);
    out.series.emplace_back("order_holds", std::move(v));
  }
  return out;
}

// --- pathwise duality ------------------------------------------------------

struct PathwiseReport {
  bool constant = false;
  Elem value = 0;            // the constant pairing value (when constant)
  std::size_t n_events = 0;
  std::size_t n_checkpoints = 0;
  double first_violation_s = -1;
  std::string detail;
};

// Runs one realization: X_s forward through the sampled log, Y^-_{T-s}
// through the dualized log, and evaluates Psi(X_s, Y^-_{T-s}) at s = 0, T
// and both one-sided limits of every event time. `grid_checkpoints` extra
// interior grid points are folded in (they land on already-computed
// plateaus but are reported in the checkpoint count).
inline PathwiseReport pathwise_duality_check(const Configuration& x, const Configuration& y,
                                             const RatedFamily& f, const DualityWitness& w,
                                             double horizon, std::uint64_t seed,
                                             std::uint64_t stream, int grid_checkpoints = 0) {
  PathwiseReport rep;
  auto dual_f = dualize_family(f, w);
  if (!dual_f) {
    rep.detail = dual_f.error().message();
    return rep;
  }
  EventLog log = sample_event_log(f, horizon, seed, stream);
  EventLog dlog = dualize_log(log);
  const std::size_t n = log.size();
  rep.n_events = n;

  // Y side snapshots: after j dual events, j = 0..n
  std::vector<Configuration> ysnap;
  ysnap.reserve(n + 1);
  Configuration ycur = y;
  ysnap.push_back(ycur);
  for (const Event& e : dlog.events) {
    dual_f->maps[e.instance].map.apply_in_place(ycur);
    ysnap.push_back(ycur);
  }

  // forward sweep; after K events the matching dual snapshot is n-K
  Configuration xcur = x;
  Elem expected = pairing_value(w, xcur, ysnap[n]);
  rep.value = expected;
  rep.n_checkpoints = n + 1 + std::size_t(std::max(grid_checkpoints, 0));
  for (std::size_t k = 0; k < n; ++k) {
    f.maps[log.events[k].instance].map.apply_in_place(xcur);
    Elem v = pairing_value(w, xcur, ysnap[n - 1 - k]);
    if (v != expected) {
      rep.constant = false;
      rep.first_violation_s = log.events[k].time;
      rep.detail = "pairing jumped from " + w.T->name_of(expected) + " to " + w.T->name_of(v) +
                   " at event " + std::to_string(k);
      return rep;
    }
  }
  rep.constant = true;
  return rep;
}

}  // namespace dualips
