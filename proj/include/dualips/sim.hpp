// Event-driven simulation of CP / cCP / 2CP restricted to active sites.
// Events whose source site is neutral are no-ops of the generator, so the
// jump chain thinned to non-neutral sources has exactly the same law; this
// is what makes long scans cheap on mostly-empty lattices.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dualips/configuration.hpp"
#include "dualips/family.hpp"
#include "dualips/lattice.hpp"
#include "dualips/rng.hpp"

namespace dualips {

enum class ProcessKind { CP, CCP, TwoCP };

struct Process {
  ProcessKind kind = ProcessKind::CP;
  ProcessParams params;
  const TorusLattice* lattice = nullptr;

  const FiniteMonoid& monoid() const {
    const Builtins& b = builtins();
    switch (kind) {
      case ProcessKind::CP:
        return b.t_or;
      case ProcessKind::CCP:
        return b.t_xor;
      default:
        return b.u;
    }
  }

  RatedFamily family() const {
    switch (kind) {
      case ProcessKind::CP:
        return build_cp_family(params.lambda, params.delta, *lattice);
      case ProcessKind::CCP:
        return build_ccp_family(params.lambda, params.delta, *lattice);
      default:
        return build_2cp_family(params, *lattice);
    }
  }
};

// Gillespie state with O(1) activation bookkeeping.
class Simulator {
 public:
  Simulator(const Process& proc, Configuration x0, Rng rng)
      : proc_(proc), x_(std::move(x0)), rng_(rng), pos_(x_.values.size(), -1) {
    build_event_table();
    for (long long i = 0; i < static_cast<long long>(x_.values.size()); ++i)
      if (x_.values[std::size_t(i)] != x_.monoid->neutral()) activate(i);
  }

  const Configuration& state() const { return x_; }
  double time() const { return t_; }
  bool extinct() const { return active_.empty(); }

  // Advances to t_end (or absorption). Returns the number of applied events.
  std::uint64_t run_until(double t_end) {
    std::uint64_t applied = 0;
    while (!active_.empty() && site_rate_ > 0) {
      double total = double(active_.size()) * site_rate_;
      double dt = rng_.exponential(total);
      if (t_ + dt > t_end) break;
      t_ += dt;
      long long site = active_[std::size_t(rng_.uniform_below(active_.size()))];
      apply_event(site, pick_event());
      ++applied;
    }
    if (active_.empty() && extinction_time_ < 0) extinction_time_ = t_;
    t_ = std::max(t_, t_end);
    return applied;
  }

  // time of absorption into the all-neutral state, < 0 if still alive
  double extinction_time() const { return extinction_time_; }

 private:
  struct EventKind {
    double rate;
    int axis;      // infection axis, -1 for deaths
    int dir;       // +1/-1 for infections
    Elem src_hom;  // 0 = full value, 1 = first coordinate, 2 = second (2CP)
  };

  void build_event_table() {
    const ProcessParams& p = proc_.params;
    const int d = proc_.lattice->dim();
    auto add_inf = [&](double rate, Elem which) {
      if (rate <= 0) return;
      for (int k = 0; k < d; ++k)
        for (int dir : {+1, -1}) kinds_.push_back({rate, k, dir, which});
    };
    auto add_dth = [&](double rate, Elem which) {
      if (rate > 0) kinds_.push_back({rate, -1, 0, which});
    };
    if (proc_.kind == ProcessKind::TwoCP) {
      add_inf(p.lambda, 0);
      add_inf(p.lambda_or, 1);
      add_inf(p.lambda_xor, 2);
      add_dth(p.delta, 0);
      add_dth(p.delta_or, 1);
      add_dth(p.delta_xor, 2);
    } else {
      add_inf(p.lambda, 0);
      add_dth(p.delta, 0);
    }
    site_rate_ = 0;
    cum_.clear();
    for (const auto& k : kinds_) {
      site_rate_ += k.rate;
      cum_.push_back(site_rate_);
    }
  }

  std::size_t pick_event() {
    double r = rng_.real() * site_rate_;
    for (std::size_t k = 0; k + 1 < cum_.size(); ++k)
      if (r < cum_[k]) return k;
    return cum_.size() - 1;
  }

  void apply_event(long long site, std::size_t kind_idx) {
    const EventKind& k = kinds_[kind_idx];
    const bool two = proc_.kind == ProcessKind::TwoCP;
    if (k.axis < 0) {  // death
      Elem v = x_.values[std::size_t(site)];
      Elem nv;
      if (!two)
        nv = 0;
      else if (k.src_hom == 0)
        nv = 0;  // DTH
      else if (k.src_hom == 1)
        nv = Elem(v & 1);  // dth1 kills the first coordinate
      else
        nv = Elem(v & 2);  // dth2 kills the second coordinate
      set_value(site, nv);
      return;
    }
    long long j = proc_.lattice->neighbor(site, k.axis, k.dir);
    Elem src = x_.values[std::size_t(site)];
    Elem tgt = x_.values[std::size_t(j)];
    Elem nv;
    if (!two) {
      nv = proc_.kind == ProcessKind::CP ? Elem(src | tgt) : Elem(src ^ tgt);
    } else {
      Elem s1 = Elem((src >> 1) & 1), s2 = Elem(src & 1);
      Elem t1 = Elem((tgt >> 1) & 1), t2 = Elem(tgt & 1);
      if (k.src_hom == 0)  // INF: both coordinates
        nv = Elem(((s1 | t1) << 1) | (s2 ^ t2));
      else if (k.src_hom == 1)  // inf1: first coordinate only
        nv = Elem(((s1 | t1) << 1) | t2);
      else  // inf2: second coordinate only
        nv = Elem((t1 << 1) | (s2 ^ t2));
    }
    set_value(j, nv);
  }

  void set_value(long long site, Elem v) {
    Elem old = x_.values[std::size_t(site)];
    x_.values[std::size_t(site)] = v;
    const Elem neutral = x_.monoid->neutral();
    if (old == neutral && v != neutral) activate(site);
    if (old != neutral && v == neutral) deactivate(site);
  }

  void activate(long long site) {
    pos_[std::size_t(site)] = static_cast<long long>(active_.size());
    active_.push_back(site);
  }
  void deactivate(long long site) {
    long long p = pos_[std::size_t(site)];
    long long last = active_.back();
    active_[std::size_t(p)] = last;
    pos_[std::size_t(last)] = p;
    active_.pop_back();
    pos_[std::size_t(site)] = -1;
  }

  Process proc_;
  Configuration x_;
  Rng rng_;
  double t_ = 0;
  double extinction_time_ = -1;
  double site_rate_ = 0;
  std::vector<EventKind> kinds_;
  std::vector<double> cum_;
  std::vector<long long> active_;
  std::vector<long long> pos_;
};

// initial conditions used by the experiment drivers
inline Configuration single_site_config(const TorusLattice& lat, const FiniteMonoid& mon,
                                        long long site, Elem value) {
  Configuration x = Configuration::all_neutral(lat, mon);
  x[site] = value;
  return x;
}

inline Configuration bernoulli_config(const TorusLattice& lat, const FiniteMonoid& mon, double p,
                                      Elem occupied_value, Rng& rng) {
  Configuration x = Configuration::all_neutral(lat, mon);
  for (auto& v : x.values)
    if (rng.bernoulli(p)) v = occupied_value;
  return x;
}

inline Configuration constant_config(const TorusLattice& lat, const FiniteMonoid& mon, Elem value) {
  Configuration x = Configuration::all_neutral(lat, mon);
  for (auto& v : x.values) v = value;
  return x;
}

}  // namespace dualips
