// Monte Carlo experiment drivers. Replicas are embarrassingly parallel,
// keyed by (seed, stream = tag<<32 | replica); aggregation happens in
// replica order from preassigned slots, so outputs are bit-reproducible
// for a fixed spec regardless of the worker count.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dualips/experiments/matrix_system.hpp"
#include "dualips/parallel.hpp"
#include "dualips/sim.hpp"
#include "dualips/stats.hpp"

namespace dualips {

namespace stream_tag {
constexpr std::uint64_t kForward = 1, kDual = 2, kInit = 3, kMatrixX = 4;
}

inline std::uint64_t make_stream(std::uint64_t tag, std::uint64_t replica) {
  return (tag << 32) | replica;
}

// ---------------------------------------------------------------------------

enum class InitialKind { SingleSite, Bernoulli, AllOccupied, Explicit };

struct ScanSpec {
  ProcessKind kind = ProcessKind::CCP;
  std::vector<double> lambdas;
  double delta = 1.0;
  std::vector<int> lattice_sizes;
  double horizon = 100;
  int replicas = 500;
  std::uint64_t seed = 1;
  InitialKind init = InitialKind::SingleSite;
  double bernoulli_p = 0.5;
  int workers = 0;  // 0: use default_workers()

  void check() const {
    if (replicas < 1) throw std::invalid_argument("ScanSpec: replicas must be >= 1");
    if (lambdas.empty() || lattice_sizes.empty())
      throw std::invalid_argument("ScanSpec: empty grid");
  }
};

struct SurvivalRow {
  double lambda, delta;
  int lattice_size;
  double horizon;
  int replicas;
  std::uint64_t survived;
  double frequency;
  double ci_halfwidth;  // Wilson, 99%
};

// Monte Carlo frequency of {X_T != all-zero} from a single occupied site.
// "Survival" here is the finite-size proxy: non-extinction by the horizon.
inline std::vector<SurvivalRow> survival_scan(const ScanSpec& spec) {
  spec.check();
  if (spec.kind == ProcessKind::TwoCP)
    throw std::invalid_argument("survival_scan: single-bit processes only");
  int workers = spec.workers > 0 ? spec.workers : default_workers();
  std::vector<SurvivalRow> rows;
  for (int L : spec.lattice_sizes) {
    TorusLattice lat = TorusLattice::line(L);
    for (double lambda : spec.lambdas) {
      Process proc{spec.kind, {}, &lat};
      proc.params.lambda = lambda;
      proc.params.delta = spec.delta;
      const FiniteMonoid& mon = proc.monoid();
      std::vector<std::uint8_t> alive(std::size_t(spec.replicas), 0);
      parallel_for(std::size_t(spec.replicas), workers, [&](std::size_t r) {
        Rng rng(spec.seed, make_stream(stream_tag::kForward, r));
        Configuration x0 = single_site_config(lat, mon, L / 2, Elem(1));
        Simulator sim(proc, std::move(x0), rng);
        sim.run_until(spec.horizon);
        alive[r] = !sim.extinct();
      });
      Proportion p;
      p.trials = std::uint64_t(spec.replicas);
      for (auto a : alive) p.successes += a;
      rows.push_back({lambda, spec.delta, L, spec.horizon, spec.replicas, p.successes,
                      p.estimate(), p.wilson_halfwidth()});
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------

struct ParityRow {
  long long z_size;
  int replicas;
  std::uint64_t odd_count;
  double p_odd;
  double deviation;     // |p_odd - 1/2|
  double ci_halfwidth;  // Wilson, 99%
};

// P[|Z_s ^ z| odd] for probes z = {0,...,|z|-1}, cancellative process from
// a product-Bernoulli(p) start.
inline std::vector<ParityRow> parity_experiment(double lambda, double delta, int L, double s,
                                                double bernoulli_p,
                                                const std::vector<long long>& z_sizes,
                                                int replicas, std::uint64_t seed,
                                                int workers = 0) {
  if (workers <= 0) workers = default_workers();
  for (long long z : z_sizes)
    if (z < 0 || z > L) throw std::invalid_argument("parity_experiment: probe exceeds lattice");
  TorusLattice lat = TorusLattice::line(L);
  Process proc{ProcessKind::CCP, {}, &lat};
  proc.params.lambda = lambda;
  proc.params.delta = delta;
  const FiniteMonoid& mon = proc.monoid();

  std::vector<std::vector<std::uint8_t>> odd(z_sizes.size(),
                                             std::vector<std::uint8_t>(std::size_t(replicas), 0));
  parallel_for(std::size_t(replicas), workers, [&](std::size_t r) {
    Rng rng(seed, make_stream(stream_tag::kForward, r));
    Configuration x0 = bernoulli_config(lat, mon, bernoulli_p, Elem(1), rng);
    Simulator sim(proc, std::move(x0), rng);
    sim.run_until(s);
    const Configuration& x = sim.state();
    for (std::size_t zi = 0; zi < z_sizes.size(); ++zi) {
      int par = 0;
      for (long long site = 0; site < z_sizes[zi]; ++site)
        par ^= (x.values[std::size_t(site)] != 0);
      odd[zi][r] = std::uint8_t(par);
    }
  });

  std::vector<ParityRow> rows;
  for (std::size_t zi = 0; zi < z_sizes.size(); ++zi) {
    Proportion p;
    p.trials = std::uint64_t(replicas);
    for (auto o : odd[zi]) p.successes += o;
    double est = p.estimate();
    rows.push_back({z_sizes[zi], replicas, p.successes, est, std::abs(est - 0.5),
                    p.wilson_halfwidth()});
  }
  return rows;
}

// ---------------------------------------------------------------------------

struct IntersectRow {
  long long z_size;
  int replicas;
  std::uint64_t empty_count;
  double p_empty;  // P[Z_s ^ z = all-zero]
  double ci_halfwidth;
};

inline std::vector<IntersectRow> intersection_experiment(double lambda, double delta, int L,
                                                         double s, double bernoulli_p,
                                                         const std::vector<long long>& z_sizes,
                                                         int replicas, std::uint64_t seed,
                                                         int workers = 0) {
  if (workers <= 0) workers = default_workers();
  if (lambda <= 0) throw std::invalid_argument("intersection_experiment: needs lambda > 0");
  for (long long z : z_sizes)
    if (z < 0 || z > L)
      throw std::invalid_argument("intersection_experiment: probe exceeds lattice");
  TorusLattice lat = TorusLattice::line(L);
  Process proc{ProcessKind::CP, {}, &lat};
  proc.params.lambda = lambda;
  proc.params.delta = delta;
  const FiniteMonoid& mon = proc.monoid();

  std::vector<std::vector<std::uint8_t>> empty(z_sizes.size(),
                                               std::vector<std::uint8_t>(std::size_t(replicas), 0));
  parallel_for(std::size_t(replicas), workers, [&](std::size_t r) {
    Rng rng(seed, make_stream(stream_tag::kForward, r));
    Configuration x0 = bernoulli_p >= 1.0 ? constant_config(lat, mon, Elem(1))
                                          : bernoulli_config(lat, mon, bernoulli_p, Elem(1), rng);
    Simulator sim(proc, std::move(x0), rng);
    sim.run_until(s);
    const Configuration& x = sim.state();
    for (std::size_t zi = 0; zi < z_sizes.size(); ++zi) {
      bool any = false;
      for (long long site = 0; site < z_sizes[zi] && !any; ++site)
        any = x.values[std::size_t(site)] != 0;
      empty[zi][r] = !any;
    }
  });

  std::vector<IntersectRow> rows;
  for (std::size_t zi = 0; zi < z_sizes.size(); ++zi) {
    Proportion p;
    p.trials = std::uint64_t(replicas);
    for (auto e : empty[zi]) p.successes += e;
    rows.push_back({z_sizes[zi], replicas, p.successes, p.estimate(), p.wilson_halfwidth()});
  }
  return rows;
}

// ---------------------------------------------------------------------------

struct GrowthRow {
  double t;
  long long bound_n;
  int replicas;
  std::uint64_t mid_count;
  double p_mid;  // P[0 < |Z_t| < N]
  double ci_halfwidth;
};

inline std::vector<GrowthRow> extinction_or_growth(ProcessKind kind, double lambda, double delta,
                                                   int L, long long init_sites, long long bound_n,
                                                   const std::vector<double>& t_grid, int replicas,
                                                   std::uint64_t seed, int workers = 0) {
  if (workers <= 0) workers = default_workers();
  TorusLattice lat = TorusLattice::line(L);
  Process proc{kind, {}, &lat};
  proc.params.lambda = lambda;
  proc.params.delta = delta;
  const FiniteMonoid& mon = proc.monoid();

  std::vector<std::vector<std::uint8_t>> mid(t_grid.size(),
                                             std::vector<std::uint8_t>(std::size_t(replicas), 0));
  parallel_for(std::size_t(replicas), workers, [&](std::size_t r) {
    Rng rng(seed, make_stream(stream_tag::kForward, r));
    Configuration x0 = Configuration::all_neutral(lat, mon);
    for (long long i = 0; i < init_sites; ++i) x0[L / 2 + i] = Elem(1);
    Simulator sim(proc, std::move(x0), rng);
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
      sim.run_until(t_grid[ti]);
      long long n = sim.state().occupied_count();
      mid[ti][r] = (n > 0 && n < bound_n);
    }
  });

  std::vector<GrowthRow> rows;
  for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
    Proportion p;
    p.trials = std::uint64_t(replicas);
    for (auto m : mid[ti]) p.successes += m;
    rows.push_back({t_grid[ti], bound_n, replicas, p.successes, p.estimate(),
                    p.wilson_halfwidth()});
  }
  return rows;
}

// ---------------------------------------------------------------------------

struct ConvergeRow {
  std::string probe;
  double t;
  int replicas;
  double forward_mean;  // E[Psi(X_t, y)], X from the all-(1,1) start
  double forward_hw;
  double dual_extinct;  // P[dual chain from y extinct by t]
  double dual_hw;
  double difference;
  double combined_hw;
};

struct ProbeSpec {
  std::string label;
  std::vector<std::pair<long long, Elem>> sites;  // (site, U element)
};

// Finite-size proxy for the invariant-law characterisation: forward
// pairing expectations against dual extinction probabilities. The psi-dual
// of the coupled family is the same family with infection arrows reversed,
// which on the torus is the same map set, so the dual side runs the same
// process started from the probe.
inline std::vector<ConvergeRow> convergence_to_nu(const ProcessParams& params, int L,
                                                  const std::vector<ProbeSpec>& probes,
                                                  const std::vector<double>& t_grid, int replicas,
                                                  std::uint64_t seed, int workers = 0) {
  if (workers <= 0) workers = default_workers();
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(L);
  Process proc{ProcessKind::TwoCP, params, &lat};

  std::vector<Configuration> probe_configs;
  for (const auto& ps : probes) {
    Configuration y = Configuration::all_neutral(lat, b.u);
    for (auto [site, v] : ps.sites) y[site] = v;
    probe_configs.push_back(std::move(y));
  }

  // forward pass: one trajectory per replica, paired with every probe at
  // every grid time
  std::vector<std::vector<double>> fwd(probes.size() * t_grid.size(),
                                       std::vector<double>(std::size_t(replicas), 0.0));
  parallel_for(std::size_t(replicas), workers, [&](std::size_t r) {
    Rng rng(seed, make_stream(stream_tag::kForward, r));
    Simulator sim(proc, constant_config(lat, b.u, Elem(3)), rng);
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
      sim.run_until(t_grid[ti]);
      for (std::size_t pi = 0; pi < probes.size(); ++pi)
        fwd[pi * t_grid.size() + ti][r] =
            double(pairing_numeric(b.psi, sim.state(), probe_configs[pi]));
    }
  });

  // dual pass: extinction times from each probe
  std::vector<std::vector<double>> ext_time(probes.size(),
                                            std::vector<double>(std::size_t(replicas), -1.0));
  for (std::size_t pi = 0; pi < probes.size(); ++pi) {
    parallel_for(std::size_t(replicas), workers, [&](std::size_t r) {
      Rng rng(seed, make_stream(stream_tag::kDual + pi, r));
      Simulator sim(proc, probe_configs[pi], rng);
      sim.run_until(t_grid.back());
      ext_time[pi][r] = sim.extinction_time();
    });
  }

  std::vector<ConvergeRow> rows;
  for (std::size_t pi = 0; pi < probes.size(); ++pi)
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
      RunningMean fm;
      for (double v : fwd[pi * t_grid.size() + ti]) fm.add(v);
      Proportion dp;
      dp.trials = std::uint64_t(replicas);
      for (double et : ext_time[pi]) dp.successes += (et >= 0 && et <= t_grid[ti]);
      double diff = std::abs(fm.mean() - dp.estimate());
      rows.push_back({probes[pi].label, t_grid[ti], replicas, fm.mean(), fm.halfwidth(),
                      dp.estimate(), dp.wilson_halfwidth(), diff,
                      combined_halfwidth(fm.halfwidth(), dp.wilson_halfwidth())});
    }
  return rows;
}

// ---------------------------------------------------------------------------

struct XYDualRow {
  double t;
  int replicas;
  double lhs;  // P[|X_t ^ Y_0| odd]
  double lhs_hw;
  double rhs;  // P[|X_0 ^ Y_t| odd]
  double rhs_hw;
  double difference;
  double combined_hw;
};

namespace detail {

// full-rate event-driven run of a matrix system (instances picked
// proportionally to rate); exact but not thinned, fine for short horizons
inline void run_matrix_system(Configuration& x, const CancellativeMatrixSystem& sys, double t_end,
                              Rng& rng) {
  std::vector<double> cum;
  double total = 0;
  for (const auto& g : sys.generators) cum.push_back(total += g.rate);
  if (total <= 0) return;
  double t = 0;
  for (;;) {
    t += rng.exponential(total);
    if (t > t_end) return;
    double r = rng.real() * total;
    std::size_t k = std::size_t(std::lower_bound(cum.begin(), cum.end(), r) - cum.begin());
    if (k >= sys.generators.size()) k = sys.generators.size() - 1;
    matrix_step(x, sys.generators[k].matrix);
  }
}

}  // namespace detail

// Both sides of the parity duality for the matrix form: X jumps with the
// matrices A, Y with the adjoints A^T; X_0 product-Bernoulli(p), Y_0 a
// fixed finite probe.
inline std::vector<XYDualRow> matrix_duality_check(double lambda, double delta, int L,
                                                   double bernoulli_p, long long probe_size,
                                                   const std::vector<double>& t_grid, int replicas,
                                                   std::uint64_t seed, int workers = 0) {
  if (workers <= 0) workers = default_workers();
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(L);
  CancellativeMatrixSystem sys = build_matrix_system(lambda, delta, lat);
  CancellativeMatrixSystem dual_sys = transposed_system(sys);

  Configuration y0 = Configuration::all_neutral(lat, b.t_xor);
  for (long long i = 0; i < probe_size; ++i) y0[i] = 1;

  auto parity_with_probe = [&](const Configuration& x, const Configuration& z) {
    int par = 0;
    for (std::size_t i = 0; i < x.values.size(); ++i) par ^= (x.values[i] & z.values[i]);
    return par != 0;
  };

  std::vector<std::vector<std::uint8_t>> lhs_odd(t_grid.size(),
                                                 std::vector<std::uint8_t>(std::size_t(replicas)));
  std::vector<std::vector<std::uint8_t>> rhs_odd(t_grid.size(),
                                                 std::vector<std::uint8_t>(std::size_t(replicas)));
  // disjoint tag ranges keep the two chains independent segment by segment
  parallel_for(std::size_t(replicas), workers, [&](std::size_t r) {
    Rng init_rng(seed, make_stream(stream_tag::kMatrixX, r));
    Configuration x = bernoulli_config(lat, b.t_xor, bernoulli_p, Elem(1), init_rng);
    Configuration x0 = x;
    double prev = 0;
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
      Rng step_rng(seed, make_stream(0x100 + ti, r));
      detail::run_matrix_system(x, sys, t_grid[ti] - prev, step_rng);
      prev = t_grid[ti];
      lhs_odd[ti][r] = parity_with_probe(x, y0);
    }
    Configuration y = y0;
    prev = 0;
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
      Rng step_rng(seed, make_stream(0x200 + ti, r));
      detail::run_matrix_system(y, dual_sys, t_grid[ti] - prev, step_rng);
      prev = t_grid[ti];
      rhs_odd[ti][r] = parity_with_probe(x0, y);
    }
  });

  std::vector<XYDualRow> rows;
  for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
    Proportion lp, rp;
    lp.trials = rp.trials = std::uint64_t(replicas);
    for (auto v : lhs_odd[ti]) lp.successes += v;
    for (auto v : rhs_odd[ti]) rp.successes += v;
    rows.push_back({t_grid[ti], replicas, lp.estimate(), lp.wilson_halfwidth(), rp.estimate(),
                    rp.wilson_halfwidth(), std::abs(lp.estimate() - rp.estimate()),
                    combined_halfwidth(lp.wilson_halfwidth(), rp.wilson_halfwidth())});
  }
  return rows;
}

}  // namespace dualips
