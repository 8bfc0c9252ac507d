#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "dualips/exact/transient.hpp"
#include "dualips/experiments/drift.hpp"
#include "dualips/experiments/matrix_system.hpp"
#include "dualips/experiments/montecarlo.hpp"
#include "dualips/rational.hpp"

using namespace dualips;

namespace {

std::uint64_t mask_of_pattern(const std::string& pattern) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < pattern.size(); ++i)
    if (pattern[i] == '1') m |= std::uint64_t(1) << (i + 1);
  return m;
}

}  // namespace

TEST_CASE("rational arithmetic and parsing") {
  CHECK(parse_rational("2") == Rational(2));
  CHECK(parse_rational("1.9") == Rational(19, 10));
  CHECK(parse_rational("-0.2") == Rational(-1, 5));
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK((Rational(19, 10) * 2 - Rational(4)) == Rational(-1, 5));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("drift of the reference patterns matches the generator computation") {
  // pattern 101: two outward reproductions (+1 each), two deaths (-2 each)
  for (auto [l, d] : {std::pair<long long, long long>{2, 1}, {3, 1}, {1, 2}}) {
    Rational lambda(l), delta(d);
    CHECK(drift_of_mask(mask_of_pattern("101"), lambda, delta) ==
          lambda * 2 - delta * 4);
    CHECK(drift_of_mask(mask_of_pattern("11"), lambda, delta) == -(delta * 2));
    CHECK(drift_of_mask(mask_of_pattern("1"), lambda, delta) == lambda * 2 - delta * 4);
  }
}

TEST_CASE("drift enumeration at lambda = 2 delta: max drift exactly zero") {
  auto rep = drift_enumeration(14, Rational(2), Rational(1));
  CHECK(rep.max_drift == Rational(0));
  CHECK(rep.all_nonpositive);
  // attained only on configurations whose edges match the 101 / single-site
  // analysis: every argmax is "1" or starts "10" and ends "01" with an
  // isolated endpoint one
  for (const auto& pat : rep.argmax_patterns) {
    if (pat == "1") continue;
    REQUIRE(pat.size() >= 3);
    CHECK(pat.substr(0, 2) == "10");
    CHECK(pat.substr(pat.size() - 2) == "01");
  }
  // 101 and the single site are among them
  bool has_single = false, has_101 = false;
  for (const auto& pat : rep.argmax_patterns) {
    has_single = has_single || pat == "1";
    has_101 = has_101 || pat == "101";
  }
  CHECK(has_single);
  CHECK(has_101);
}

TEST_CASE("drift enumeration below the bound: max drift = 2 lambda - 4 delta < 0") {
  auto rep = drift_enumeration(14, Rational(19, 10), Rational(1));
  CHECK(rep.max_drift == Rational(-1, 5));
  CHECK(rep.all_nonpositive);
  auto rep2 = drift_enumeration(12, Rational(1), Rational(1));
  CHECK(rep2.max_drift == Rational(-2));
  // above the bound the drift turns positive
  auto rep3 = drift_enumeration(10, Rational(3), Rational(1));
  CHECK(!rep3.all_nonpositive);
  CHECK(rep3.max_drift == Rational(2));
}

TEST_CASE("drift enumeration counts anchored configurations") {
  // widths 1..K with fixed endpoints: 1 + sum_{w=2..K} 2^(w-2)
  auto rep = drift_enumeration(6, Rational(2), Rational(1));
  CHECK(rep.configurations == 1 + 1 + 2 + 4 + 8 + 16);
  CHECK_THROWS_AS(drift_enumeration(21, Rational(1), Rational(1)), std::invalid_argument);
}

TEST_CASE("matrix blocks reproduce the generator maps") {
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(7);
  RatedFamily fam = build_ccp_family(1.0, 1.0, lat);
  Rng rng(8, 0);

  SECTION("translated infection block equals the infection map") {
    for (long long i = 0; i < 7; ++i)
      for (int dir : {+1, -1}) {
        BinaryMatrix a = translated(infection_block(lat, 0, dir), lat, i);
        long long j = lat.neighbor(i, 0, dir);
        for (int trial = 0; trial < 10; ++trial) {
          Configuration x = Configuration::all_neutral(lat, b.t_xor);
          for (auto& v : x.values) v = Elem(rng.uniform_below(2));
          Configuration via_matrix = x;
          matrix_step(via_matrix, a);
          Configuration expect = x;
          expect[j] = Elem(expect(j) ^ x(i));
          CHECK(via_matrix == expect);
        }
      }
  }
  SECTION("translated death block equals the death map") {
    for (long long i = 0; i < 7; ++i) {
      BinaryMatrix a = translated(death_block(), lat, i);
      Configuration x = constant_config(lat, b.t_xor, 1);
      Configuration via_matrix = x;
      matrix_step(via_matrix, a);
      Configuration expect = x;
      expect[i] = 0;
      CHECK(via_matrix == expect);
    }
  }
}

TEST_CASE("matrix system replay equals the local-map replay, state for state") {
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(12);
  Rng rng(21, 0);
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    Configuration x0 = Configuration::all_neutral(lat, b.t_xor);
    for (auto& v : x0.values) v = Elem(rng.uniform_below(2));
    auto rep = replay_equivalence_check(1.3, 0.7, lat, x0, 2.0, 400, trial);
    INFO("mismatch at event " << rep.first_mismatch);
    CHECK(rep.equal);
    CHECK(rep.events > 0);
  }
}

TEST_CASE("norm over the probe set counts occupied sites") {
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(10);
  CancellativeMatrixSystem sys = build_matrix_system(1.0, 1.0, lat);
  REQUIRE(!sys.probe_set.empty());
  Rng rng(31, 0);
  for (int trial = 0; trial < 30; ++trial) {
    Configuration y = Configuration::all_neutral(lat, b.t_xor);
    for (auto& v : y.values) v = Elem(rng.uniform_below(2));
    CHECK(norm_b(sys, y) == y.occupied_count());
  }
}

TEST_CASE("transposed system flips matrix entries") {
  TorusLattice lat = TorusLattice::line(5);
  CancellativeMatrixSystem sys = build_matrix_system(1.0, 0.5, lat);
  CancellativeMatrixSystem dual = transposed_system(sys);
  REQUIRE(dual.generators.size() == sys.generators.size());
  for (std::size_t k = 0; k < sys.generators.size(); ++k) {
    REQUIRE(dual.generators[k].matrix.ones.size() == sys.generators[k].matrix.ones.size());
    for (std::size_t e = 0; e < sys.generators[k].matrix.ones.size(); ++e) {
      CHECK(dual.generators[k].matrix.ones[e].first == sys.generators[k].matrix.ones[e].second);
      CHECK(dual.generators[k].matrix.ones[e].second == sys.generators[k].matrix.ones[e].first);
    }
  }
}

TEST_CASE("survival scan: degenerate rates give deterministic frequencies") {
  ScanSpec spec;
  spec.kind = ProcessKind::CCP;
  spec.delta = 1.0;
  spec.lambdas = {0.0};
  spec.lattice_sizes = {20};
  spec.horizon = 40.0;
  spec.replicas = 60;
  spec.seed = 5;
  spec.workers = 2;
  auto rows = survival_scan(spec);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].frequency == 0.0);  // pure death dies well before T = 40

  ScanSpec alive = spec;
  alive.lambdas = {1.0};
  // delta = 0: infections cannot empty the lattice
  alive.delta = 0.0;
  auto rows2 = survival_scan(alive);
  CHECK(rows2[0].frequency == 1.0);
}

TEST_CASE("scan rows are reproducible and respect the seed") {
  ScanSpec spec;
  spec.kind = ProcessKind::CCP;
  spec.delta = 1.0;
  spec.lambdas = {1.0, 1.5};
  spec.lattice_sizes = {16};
  spec.horizon = 8.0;
  spec.replicas = 40;
  spec.seed = 12;
  spec.workers = 2;
  auto a = survival_scan(spec);
  auto c = survival_scan(spec);
  REQUIRE(a.size() == c.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].survived == c[i].survived);
    CHECK(a[i].frequency == c[i].frequency);
  }
  spec.workers = 1;  // worker count must not change results
  auto d = survival_scan(spec);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].survived == d[i].survived);
}

TEST_CASE("parity experiment: zero probe and time zero are exact") {
  auto rows = parity_experiment(1.0, 1.0, 32, 0.0, 0.5, {0, 1, 8}, 400, 9, 2);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].p_odd == 0.0);  // empty probe: parity never odd
  // at s = 0 with p = 1/2 the parity of any nonempty probe is exactly
  // balanced; the estimate must sit within its own CI of 1/2
  CHECK(rows[1].deviation <= rows[1].ci_halfwidth);
  CHECK(rows[2].deviation <= rows[2].ci_halfwidth);
}

TEST_CASE("intersection experiment: empty probe has probability one") {
  auto rows = intersection_experiment(2.0, 1.0, 32, 0.5, 1.0, {0, 1, 10}, 300, 10, 2);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].p_empty == 1.0);
  // from the all-occupied start at small s, a single-site probe is empty
  // with probability close to P[site dead], and larger probes are emptier
  // less often
  CHECK(rows[1].p_empty >= rows[2].p_empty);
}

TEST_CASE("intersection single-site probe matches the exact engine") {
  // all-occupied start: P[Z_s(0) = 0] from the exact generator on a small
  // torus with matching rates
  const Builtins& b = builtins();
  const int L = 6;
  TorusLattice lat = TorusLattice::line(L);
  const double lambda = 1.2, delta = 1.0, s = 0.4;
  auto rows = intersection_experiment(lambda, delta, L, s, 1.0, {1}, 4000, 77, 2);
  REQUIRE(rows.size() == 1);

  RatedFamily f = build_cp_family(lambda, delta, lat);
  StateCodec codec(lat, b.t_or);
  SparseGenerator gen(f, codec);
  auto mu = transient(
      DistributionVector::point_mass(codec.state_count(), codec.encode(constant_config(lat, b.t_or, 1))),
      gen, s, 1e-10);
  double exact = 0;
  for (std::uint64_t st = 0; st < codec.state_count(); ++st)
    if ((st & 1) == 0) exact += mu.probabilities[st];  // site 0 empty
  CHECK(std::fabs(rows[0].p_empty - exact) <= 4 * rows[0].ci_halfwidth + 1e-3);
}

TEST_CASE("extinction-or-growth: degenerate cases") {
  auto rows = extinction_or_growth(ProcessKind::CCP, 0.0, 1.0, 24, 3, 10, {5.0, 10.0}, 200, 3, 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].p_mid == 0.0);  // everything extinct by t = 10

  // N = 1: the event 0 < |Z| < 1 is empty
  auto rows2 = extinction_or_growth(ProcessKind::CCP, 2.0, 1.0, 24, 3, 1, {1.0}, 100, 4, 2);
  CHECK(rows2[0].p_mid == 0.0);
}

TEST_CASE("convergence driver: all-neutral probe gives ones on both sides") {
  ProcessParams p;
  p.lambda = p.delta = p.lambda_or = p.delta_or = p.lambda_xor = p.delta_xor = 1.0;
  std::vector<ProbeSpec> probes = {{"empty", {}}, {"one11", {{0, Elem(3)}}}};
  auto rows = convergence_to_nu(p, 16, probes, {0.0, 1.0}, 200, 21, 2);
  REQUIRE(rows.size() == 4);
  // empty probe: Psi(. , 0) = 1 and the dual chain starts absorbed
  CHECK(rows[0].forward_mean == 1.0);
  CHECK(rows[0].dual_extinct == 1.0);
  CHECK(rows[1].forward_mean == 1.0);
  CHECK(rows[1].dual_extinct == 1.0);
  // t = 0, probe (1,1) at one site: Psi(all-(1,1), y) = psi((1,1),(1,1)) = 0
  CHECK(rows[2].forward_mean == 0.0);
  CHECK(rows[2].dual_extinct == 0.0);
}

TEST_CASE("matrix duality check: both sides agree within the combined band") {
  auto rows = matrix_duality_check(1.0, 1.0, 32, 0.5, 3, {0.5, 1.0}, 2500, 31, 2);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    INFO("t=" << r.t << " lhs=" << r.lhs << " rhs=" << r.rhs);
    CHECK(r.difference <= 3 * r.combined_hw);
  }
}

TEST_CASE("wilson interval sanity") {
  Proportion p;
  p.successes = 50;
  p.trials = 100;
  CHECK(p.estimate() == 0.5);
  CHECK(p.wilson_halfwidth() > 0.09);
  CHECK(p.wilson_halfwidth() < 0.14);
  Proportion all;
  all.successes = 100;
  all.trials = 100;
  CHECK(all.estimate() - all.wilson_halfwidth() < 1.0);
  CHECK(combined_halfwidth(3.0, 4.0) == 5.0);
}

TEST_CASE("simulator distribution matches uniformization on a small torus") {
  // full time-t distribution of the thinned Gillespie run against the
  // exact transient solve; total-variation distance must sit inside a
  // generous Monte Carlo band
  const Builtins& b = builtins();
  const int L = 4;
  TorusLattice lat = TorusLattice::line(L);
  const double lambda = 1.4, delta = 0.8, t = 0.9;

  RatedFamily f = build_ccp_family(lambda, delta, lat);
  StateCodec codec(lat, b.t_xor);
  SparseGenerator gen(f, codec);
  Configuration x0 = Configuration::all_neutral(lat, b.t_xor);
  x0[0] = 1;
  x0[2] = 1;
  auto exact = transient(DistributionVector::point_mass(codec.state_count(), codec.encode(x0)),
                         gen, t, 1e-12);

  Process proc{ProcessKind::CCP, {}, &lat};
  proc.params.lambda = lambda;
  proc.params.delta = delta;
  const int replicas = 60000;
  std::vector<double> hist(codec.state_count(), 0.0);
  for (int r = 0; r < replicas; ++r) {
    Simulator sim(proc, x0, Rng(5150, std::uint64_t(r)));
    sim.run_until(t);
    hist[codec.encode(sim.state())] += 1.0 / replicas;
  }
  double tv = 0;
  for (std::uint64_t s = 0; s < codec.state_count(); ++s)
    tv += std::fabs(hist[s] - exact.probabilities[s]);
  tv /= 2;
  INFO("tv distance " << tv);
  CHECK(tv < 0.02);
}

TEST_CASE("coupled-process simulator distribution matches uniformization") {
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(3);
  ProcessParams p;
  p.lambda = 1.0;
  p.delta = 0.7;
  p.lambda_or = 0.5;
  p.delta_or = 0.4;
  p.lambda_xor = 0.6;
  p.delta_xor = 0.3;
  const double t = 0.8;

  RatedFamily f = build_2cp_family(p, lat);
  StateCodec codec(lat, b.u);
  SparseGenerator gen(f, codec);
  Configuration x0 = Configuration::all_neutral(lat, b.u);
  x0[0] = 3;
  x0[1] = 1;
  auto exact = transient(DistributionVector::point_mass(codec.state_count(), codec.encode(x0)),
                         gen, t, 1e-12);

  Process proc{ProcessKind::TwoCP, p, &lat};
  const int replicas = 60000;
  std::vector<double> hist(codec.state_count(), 0.0);
  for (int r = 0; r < replicas; ++r) {
    Simulator sim(proc, x0, Rng(6160, std::uint64_t(r)));
    sim.run_until(t);
    hist[codec.encode(sim.state())] += 1.0 / replicas;
  }
  double tv = 0;
  for (std::uint64_t s = 0; s < codec.state_count(); ++s)
    tv += std::fabs(hist[s] - exact.probabilities[s]);
  tv /= 2;
  INFO("tv distance " << tv);
  CHECK(tv < 0.03);
}

TEST_CASE("event-log evolution distribution matches uniformization") {
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(3);
  const double lambda = 1.2, delta = 0.9, t = 0.7;
  RatedFamily f = build_cp_family(lambda, delta, lat);
  StateCodec codec(lat, b.t_or);
  SparseGenerator gen(f, codec);
  Configuration x0 = Configuration::all_neutral(lat, b.t_or);
  x0[1] = 1;
  auto exact = transient(DistributionVector::point_mass(codec.state_count(), codec.encode(x0)),
                         gen, t, 1e-12);
  const int replicas = 40000;
  std::vector<double> hist(codec.state_count(), 0.0);
  for (int r = 0; r < replicas; ++r) {
    EventLog log = sample_event_log(f, t, 7170, std::uint64_t(r));
    hist[codec.encode(evolve(x0, log, f, 0, t, Boundary::OpenClosed))] += 1.0 / replicas;
  }
  double tv = 0;
  for (std::uint64_t s = 0; s < codec.state_count(); ++s)
    tv += std::fabs(hist[s] - exact.probabilities[s]);
  tv /= 2;
  INFO("tv distance " << tv);
  CHECK(tv < 0.02);
}

TEST_CASE("probes larger than the lattice are rejected") {
  CHECK_THROWS_AS(parity_experiment(1.0, 1.0, 16, 0.5, 0.5, {32}, 10, 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(intersection_experiment(1.0, 1.0, 16, 0.5, 0.5, {32}, 10, 1, 1),
                  std::invalid_argument);
}

TEST_CASE("intersection estimates decrease strictly beyond their intervals") {
  auto rows = intersection_experiment(2.0, 1.0, 128, 1.0, 0.5, {1, 10, 100}, 3000, 88, 2);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].p_empty + rows[i].ci_halfwidth <
          rows[i - 1].p_empty - rows[i - 1].ci_halfwidth);
}

TEST_CASE("supercritical growth pushes the mid-range probability to zero") {
  auto rows =
      extinction_or_growth(ProcessKind::CCP, 3.0, 1.0, 150, 1, 10, {5, 10, 20, 40}, 800, 19, 2);
  REQUIRE(rows.size() == 4);
  // decreasing toward zero beyond the intervals between first and last
  CHECK(rows.back().p_mid < 0.05);
  CHECK(rows.back().p_mid + rows.back().ci_halfwidth <
        rows.front().p_mid - rows.front().ci_halfwidth);
}

TEST_CASE("matrix system from a family: cancellative only, aligned entries") {
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(8);
  RatedFamily ccp = build_ccp_family(1.5, 0.5, lat);
  CancellativeMatrixSystem sys = matrix_system_from_family(ccp);
  REQUIRE(sys.generators.size() == ccp.maps.size());
  // replay one log through both representations
  EventLog log = sample_event_log(ccp, 1.5, 606, 0);
  Configuration a = single_site_config(lat, b.t_xor, 3, 1);
  Configuration c = a;
  for (const Event& e : log.events) {
    ccp.maps[e.instance].map.apply_in_place(a);
    matrix_step(c, sys.generators[e.instance].matrix);
  }
  CHECK(a == c);

  RatedFamily cp = build_cp_family(1.0, 1.0, lat);
  CHECK_THROWS_WITH(matrix_system_from_family(cp),
                    Catch::Matchers::ContainsSubstring("NotCancellative"));
}

TEST_CASE("matrix summability values on the torus") {
  TorusLattice lat = TorusLattice::line(10);
  CancellativeMatrixSystem sys = build_matrix_system(1.5, 0.75, lat);
  auto s = matrix_summability(sys);
  // each site is the source column of 2d infections and one death
  CHECK(s.primal == Catch::Approx(2 * 1.5 + 0.75));
  CHECK(s.adjoint == Catch::Approx(2 * 1.5 + 0.75));
}
