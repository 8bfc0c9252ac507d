#include <catch2/catch_amalgamated.hpp>

#include "dualips/flow.hpp"
#include "dualips/sim.hpp"

using namespace dualips;

namespace {

Configuration random_u_config(const TorusLattice& lat, Rng& rng) {
  Configuration x = Configuration::all_neutral(lat, builtins().u);
  for (auto& v : x.values) v = Elem(rng.uniform_below(4));
  return x;
}

}  // namespace

TEST_CASE("pathwise pairing is constant: zero-event log") {
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(4);
  ProcessParams p;  // all rates zero
  RatedFamily f = build_2cp_family(p, lat);
  Rng rng(7, 0);
  Configuration x = random_u_config(lat, rng);
  Configuration y = single_site_config(lat, b.u, 1, 3);
  auto rep = pathwise_duality_check(x, y, f, b.psi, 5.0, 7, 0);
  CHECK(rep.constant);
  CHECK(rep.n_events == 0);
  CHECK(rep.value == pairing_value(b.psi, x, y));
}

TEST_CASE("pathwise pairing is constant: coupled process on sixteen sites") {
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(16);
  ProcessParams p;
  p.lambda = 1.0;
  p.delta = 0.8;
  p.lambda_or = 0.6;
  p.delta_or = 0.4;
  p.lambda_xor = 0.5;
  p.delta_xor = 0.3;
  RatedFamily f = build_2cp_family(p, lat);
  for (std::uint64_t trial = 0; trial < 25; ++trial) {
    Rng rng(2024, trial);
    Configuration x = random_u_config(lat, rng);
    Configuration y = single_site_config(lat, b.u, (long long)rng.uniform_below(16), 3);
    auto rep = pathwise_duality_check(x, y, f, b.psi, 5.0, 2024, trial);
    INFO("trial " << trial << ": " << rep.detail);
    CHECK(rep.constant);
    CHECK(rep.n_events > 0);
  }
}

TEST_CASE("pathwise pairing is constant: plain contact process with psi_add") {
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(12);
  RatedFamily f = build_cp_family(1.5, 1.0, lat);
  for (std::uint64_t trial = 0; trial < 25; ++trial) {
    Rng rng(99, trial);
    Configuration x = Configuration::all_neutral(lat, b.t_or);
    for (auto& v : x.values) v = Elem(rng.uniform_below(2));
    Configuration y = single_site_config(lat, b.t_or, (long long)rng.uniform_below(12), 1);
    auto rep = pathwise_duality_check(x, y, f, b.psi_add, 4.0, 99, trial);
    CHECK(rep.constant);
  }
}

TEST_CASE("pathwise pairing is constant: cancellative process with psi_canc") {
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(12);
  RatedFamily f = build_ccp_family(1.5, 1.0, lat);
  for (std::uint64_t trial = 0; trial < 25; ++trial) {
    Rng rng(17, trial);
    Configuration x = Configuration::all_neutral(lat, b.t_xor);
    for (auto& v : x.values) v = Elem(rng.uniform_below(2));
    Configuration y = single_site_config(lat, b.t_xor, (long long)rng.uniform_below(12), 1);
    auto rep = pathwise_duality_check(x, y, f, b.psi_canc, 4.0, 17, trial);
    CHECK(rep.constant);
  }
}

TEST_CASE("a deliberately broken dual family is caught") {
  // sanity of the checker itself: pair the forward log with the *forward*
  // family instead of the dual one; the pairing should jump
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(8);
  RatedFamily f = build_ccp_family(2.0, 1.0, lat);
  bool any_violation = false;
  for (std::uint64_t trial = 0; trial < 20 && !any_violation; ++trial) {
    EventLog log = sample_event_log(f, 3.0, 31, trial);
    EventLog dlog = dualize_log(log);
    Rng rng(5, trial);
    Configuration x = Configuration::all_neutral(lat, b.t_xor);
    for (auto& v : x.values) v = Elem(rng.uniform_below(2));
    Configuration y = single_site_config(lat, b.t_xor, 3, 1);
    // wrong replay: forward maps on the reversed log
    Configuration ycur = y;
    std::vector<Configuration> ysnap{ycur};
    for (const Event& e : dlog.events) {
      f.maps[e.instance].map.apply_in_place(ycur);
      ysnap.push_back(ycur);
    }
    Configuration xcur = x;
    Elem expected = pairing_value(b.psi_canc, xcur, ysnap.back());
    for (std::size_t k = 0; k < log.size(); ++k) {
      f.maps[log.events[k].instance].map.apply_in_place(xcur);
      if (pairing_value(b.psi_canc, xcur, ysnap[log.size() - 1 - k]) != expected)
        any_violation = true;
    }
  }
  CHECK(any_violation);
}

TEST_CASE("monotone coupling: order holds at every event time") {
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(10);
  ProcessParams p;  // delta_or = lambda_xor = 0
  p.lambda = 1.2;
  p.delta = 0.9;
  p.lambda_or = 0.7;
  p.delta_xor = 0.5;
  RatedFamily f = build_2cp_family(p, lat);
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    Rng rng(55, trial);
    Configuration x = Configuration::all_neutral(lat, b.u);
    for (auto& v : x.values) {
      Elem first = Elem(rng.uniform_below(2));
      Elem second = first == 0 ? Elem(0) : Elem(rng.uniform_below(2));
      v = Elem((first << 1) | second);
    }
    REQUIRE(order_holds(x));
    EventLog log = sample_event_log(f, 4.0, 55, trial);
    Configuration cur = x;
    for (const Event& e : log.events) {
      f.maps[e.instance].map.apply_in_place(cur);
      CHECK(order_holds(cur));
    }
  }
}

TEST_CASE("trajectory snapshots reproduce evolve") {
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(6);
  RatedFamily f = build_ccp_family(1.0, 0.5, lat);
  EventLog log = sample_event_log(f, 4.0, 13, 2);
  Configuration x = single_site_config(lat, b.t_xor, 2, 1);
  Trajectory traj = make_trajectory(x, log, f, {1.0, 2.0, 4.0});
  REQUIRE(traj.snapshots.size() == 3);
  for (std::size_t k = 0; k < traj.times.size(); ++k)
    CHECK(traj.snapshots[k] == evolve(x, log, f, 0.0, traj.times[k], Boundary::OpenClosed));
}

TEST_CASE("observables") {
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(8);

  SECTION("occupied counts per coordinate") {
    Configuration x = Configuration::all_neutral(lat, b.u);
    x[0] = 3;
    x[1] = 2;
    x[2] = 1;
    auto counts = occupied_counts(x);
    REQUIRE(counts.size() == 2);
    CHECK(counts[0] == 2);  // (1,1) and (1,0)
    CHECK(counts[1] == 2);  // (1,1) and (0,1)
  }

  SECTION("spread: extinct marker on the empty configuration") {
    Configuration x = Configuration::all_neutral(lat, b.t_xor);
    auto s = spread(x);
    CHECK(s.extinct);
    CHECK(s.f == 0);
  }
  SECTION("spread of a single occupied site: g = 0, f = 4") {
    Configuration x = single_site_config(lat, b.t_xor, 3, 1);
    auto s = spread(x);
    CHECK(!s.extinct);
    CHECK(s.g == 0);
    CHECK(s.f == 4);
  }
  SECTION("two occupied sites at distance 2: g = 2") {
    Configuration x = Configuration::all_neutral(lat, b.t_xor);
    x[2] = 1;
    x[4] = 1;
    CHECK(spread(x).g == 2);
  }
  SECTION("parity probe") {
    Configuration x = Configuration::all_neutral(lat, b.t_xor);
    x[0] = 1;
    x[5] = 1;
    CHECK(probe_parity_odd(x, {0, 1, 2}));
    CHECK(!probe_parity_odd(x, {0, 5}));
    CHECK(!probe_parity_odd(x, {}));
  }
}

TEST_CASE("simulator marginals agree with the exact single-site death rate") {
  // one isolated site with pure death: survival probability exp(-delta*t)
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(16);
  Process proc{ProcessKind::CCP, {}, &lat};
  proc.params.lambda = 0.0;
  proc.params.delta = 1.0;
  int alive = 0;
  const int replicas = 4000;
  for (int r = 0; r < replicas; ++r) {
    Simulator sim(proc, single_site_config(lat, b.t_xor, 8, 1), Rng(77, std::uint64_t(r)));
    sim.run_until(1.0);
    alive += !sim.extinct();
  }
  double p_hat = double(alive) / replicas;
  double expect = std::exp(-1.0);
  CHECK(std::fabs(p_hat - expect) < 3 * std::sqrt(expect * (1 - expect) / replicas));
}

TEST_CASE("simulator agrees with event-log evolution in law (mean occupancy)") {
  // CP with both machineries: compare mean occupied counts at t=1
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(12);
  RatedFamily f = build_cp_family(1.5, 1.0, lat);
  Process proc{ProcessKind::CP, {}, &lat};
  proc.params.lambda = 1.5;
  proc.params.delta = 1.0;

  const int replicas = 3000;
  double mean_log = 0, mean_sim = 0;
  for (int r = 0; r < replicas; ++r) {
    Configuration x0 = single_site_config(lat, b.t_or, 6, 1);
    EventLog log = sample_event_log(f, 1.0, 301, std::uint64_t(r));
    mean_log += double(evolve(x0, log, f, 0, 1.0, Boundary::OpenClosed).occupied_count());
    Simulator sim(proc, x0, Rng(302, std::uint64_t(r)));
    sim.run_until(1.0);
    mean_sim += double(sim.state().occupied_count());
  }
  mean_log /= replicas;
  mean_sim /= replicas;
  // generous three-sigma-ish band for a mean bounded by a few sites
  CHECK(std::fabs(mean_log - mean_sim) < 0.15);
}

TEST_CASE("observe produces the requested named series") {
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(8);
  RatedFamily f = build_ccp_family(0.0, 5.0, lat);  // pure death: guaranteed extinction
  EventLog log = sample_event_log(f, 6.0, 3, 0);
  Configuration x0 = Configuration::all_neutral(lat, b.t_xor);
  x0[2] = 1;
  x0[4] = 1;
  Trajectory traj = make_trajectory(x0, log, f, {0.0, 6.0});

  ObservableRequest req;
  req.parity_probe = {2, 3};
  req.spread = true;
  req.order_flag = false;
  TimeSeries ts = observe(traj, req);

  auto* occ = ts.find("occupied");
  REQUIRE(occ);
  CHECK((*occ)[0] == 2.0);
  CHECK((*occ)[1] == 0.0);

  auto* g = ts.find("spread_g");
  auto* ff = ts.find("spread_f");
  auto* ext = ts.find("spread_extinct");
  REQUIRE(g);
  REQUIRE(ff);
  REQUIRE(ext);
  CHECK((*g)[0] == 2.0);
  CHECK((*ff)[0] == 6.0);
  CHECK((*ext)[0] == 0.0);
  CHECK((*ext)[1] == 1.0);  // extinct marker: spread undefined, f = 0
  CHECK((*ff)[1] == 0.0);

  auto* par = ts.find("parity_odd");
  REQUIRE(par);
  CHECK((*par)[0] == 1.0);

  // order series for a coupled trajectory
  ProcessParams p;
  p.lambda = 1.0;
  p.delta = 1.0;
  RatedFamily f2 = build_2cp_family(p, lat);
  Configuration y0 = constant_config(lat, b.u, 3);
  EventLog log2 = sample_event_log(f2, 2.0, 4, 0);
  Trajectory traj2 = make_trajectory(y0, log2, f2, {1.0, 2.0});
  ObservableRequest req2;
  req2.order_flag = true;
  TimeSeries ts2 = observe(traj2, req2);
  auto* ord = ts2.find("order_holds");
  REQUIRE(ord);
  CHECK((*ord)[0] == 1.0);  // coordinated coupling preserves the order
  CHECK((*ord)[1] == 1.0);
  auto* occ1 = ts2.find("occupied_1");
  auto* occ2 = ts2.find("occupied_2");
  REQUIRE(occ1);
  REQUIRE(occ2);
  CHECK((*occ1)[0] >= (*occ2)[0]);
}

TEST_CASE("simulator with all rates zero freezes the configuration") {
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(6);
  Process proc{ProcessKind::CCP, {}, &lat};  // lambda = delta = 0
  Configuration x0 = single_site_config(lat, b.t_xor, 2, 1);
  Simulator sim(proc, x0, Rng(1, 0));
  CHECK(sim.run_until(10.0) == 0);
  CHECK(sim.state() == x0);
  CHECK(!sim.extinct());
}

TEST_CASE("pathwise constancy via explicit boundary-convention evolution") {
  // same statement as pathwise_duality_check, but phrased through evolve:
  // X_s right-continuous through the log, Y^-_{T-s} left-continuous
  // through the dualized log; the pairing is constant over any s-grid
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(10);
  ProcessParams p;
  p.lambda = 1.0;
  p.delta = 0.7;
  p.lambda_or = 0.4;
  p.delta_xor = 0.6;
  RatedFamily f = build_2cp_family(p, lat);
  auto dual_f = dualize_family(f, b.psi);
  REQUIRE(dual_f.has_value());
  const double horizon = 3.0;

  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    EventLog log = sample_event_log(f, horizon, 2718, trial);
    EventLog dlog = dualize_log(log);
    Rng rng(3141, trial);
    Configuration x = Configuration::all_neutral(lat, b.u);
    for (auto& v : x.values) v = Elem(rng.uniform_below(4));
    Configuration y = single_site_config(lat, b.u, (long long)rng.uniform_below(10), 3);

    Elem expected = pairing_value(b.psi, x, evolve(y, dlog, *dual_f, 0, horizon,
                                                   Boundary::ClosedOpen));
    for (double s : {0.0, 0.3, 1.0, 1.5, 2.2, 2.9, horizon}) {
      Configuration xs = evolve(x, log, f, 0, s, Boundary::OpenClosed);
      Configuration ys = evolve(y, dlog, *dual_f, 0, horizon - s, Boundary::ClosedOpen);
      CHECK(pairing_value(b.psi, xs, ys) == expected);
    }
    // and at both one-sided limits of every event time
    for (const Event& e : log.events) {
      for (Boundary bd : {Boundary::OpenClosed, Boundary::ClosedOpen}) {
        Configuration xs = evolve(x, log, f, 0, e.time, bd);
        Configuration ys = evolve(y, dlog, *dual_f, 0, horizon - e.time,
                                  bd == Boundary::OpenClosed ? Boundary::ClosedOpen
                                                             : Boundary::OpenClosed);
        CHECK(pairing_value(b.psi, xs, ys) == expected);
      }
    }
  }
}
