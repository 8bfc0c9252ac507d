// Command-line front end: algebraic verification, pathwise and exact
// duality checks, Monte Carlo scans, drift enumeration and the matrix-form
// subsystem. Every stochastic command requires --seed and emits a CSV plus
// a JSON manifest of the effective configuration; identical config + seed
// reproduces byte-identical outputs.
#include <CLI11.hpp>

#include <cstdio>

#include "dualips/exact/absorption.hpp"
#include "dualips/exact/informativeness.hpp"
#include "dualips/exact/lumpability.hpp"
#include "dualips/exact/pattern.hpp"
#include "dualips/exact/residual.hpp"
#include "dualips/experiments/drift.hpp"
#include "dualips/experiments/montecarlo.hpp"
#include "dualips/flow.hpp"
#include "dualips/io/csv.hpp"
#include "dualips/io/json_io.hpp"

using namespace dualips;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool stochastic) {
  cmd->add_option("--config", o.config_path, "JSON config file (flags override it)");
  cmd->add_option("--out", o.out_path, "output CSV path (default: stdout)");
  cmd->add_option("--format", o.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  auto* seed_opt = cmd->add_option("--seed", o.seed, "RNG seed (required for stochastic runs)");
  if (stochastic) seed_opt->required();
  o.seed_set = stochastic;
  cmd->add_option("--workers", o.workers, "worker threads (default: DUALIPS_WORKERS or cores)");
}

// CSV + manifest emission; a failing run keeps the partial CSV and appends
// a FAILED marker row. --format json re-encodes the rows as a JSON table.
void emit(const CommonOpts& o, const std::string& command, std::string csv, bool passed,
          const Json& effective, bool stochastic, bool evidence_only = false) {
  if (!passed) csv += "FAILED\n";
  std::string payload;
  if (o.format == "json") {
    Json j;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    Json header = Json::array();
    {
      std::istringstream hs(line);
      std::string cell;
      while (std::getline(hs, cell, ',')) header.push_back(cell);
    }
    Json rows = Json::array();
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      Json row = Json::array();
      std::istringstream rs(line);
      std::string cell;
      while (std::getline(rs, cell, ',')) row.push_back(cell);
      rows.push_back(row);
    }
    j["command"] = command;
    j["passed"] = passed;
    j["header"] = header;
    j["rows"] = rows;
    payload = j.dump(2) + "\n";
  } else {
    payload = csv;
  }
  if (o.out_path.empty()) {
    std::fputs(payload.c_str(), stdout);
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    f << payload;
    if (stochastic) {
      std::ofstream m(o.out_path + ".manifest.json", std::ios::binary);
      m << make_manifest(command, effective, o.seed, evidence_only);
    }
  }
}

Json load_config(const CommonOpts& o) {
  if (o.config_path.empty()) return Json::object();
  return load_json_file(o.config_path);
}

std::vector<double> parse_grid(const std::string& csv_list) {
  std::vector<double> out;
  std::stringstream ss(csv_list);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}
std::vector<long long> parse_grid_ll(const std::string& csv_list) {
  std::vector<long long> out;
  std::stringstream ss(csv_list);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  return out;
}

int worker_count(const CommonOpts& o) { return o.workers > 0 ? o.workers : default_workers(); }

// ---------------------------------------------------------------- verify --

int cmd_verify(const CommonOpts& o, bool builtin, const std::string& witness_path,
               const std::vector<std::string>& homs_pair) {
  Json report = Json::array();
  bool all_ok = true;
  auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
    report.push_back({{"check", name}, {"ok", ok}, {"detail", detail}});
    all_ok = all_ok && ok;
    if (o.format != "json") std::printf("[%s] %s%s%s\n", ok ? "ok" : "FAIL", name.c_str(),
                                        detail.empty() ? "" : ": ", detail.c_str());
  };

  if (builtin) {
    const Builtins& b = builtins();
    for (const FiniteMonoid* m : {&b.t_or, &b.t_xor, &b.u, &b.m, &b.b01, &b.u_bar, &b.m6}) {
      std::vector<std::vector<int>> table(m->size(), std::vector<int>(m->size()));
      for (std::size_t x = 0; x < m->size(); ++x)
        for (std::size_t y = 0; y < m->size(); ++y) table[x][y] = m->op(Elem(x), Elem(y));
      auto res = validate_monoid(table, m->neutral(), m->label);
      check("monoid " + m->label, res.has_value(), res ? "" : res.error().message());
    }
    for (const DualityWitness* w :
         {&b.psi1, &b.psi2, &b.psi_add, &b.psi_canc, &b.psi, &b.psi_bar, &b.psi23}) {
      auto res = verify_duality(*w->S, *w->R, *w->T, w->psi, w->label);
      check("witness " + w->label, res.has_value(), res ? "" : res.error().message());
    }
    auto h_uu = enumerate_homs(b.u, b.u);
    check("H(U,U) has 4 elements", h_uu.size() == 4);
    auto h_tm = enumerate_homs(b.t_or, b.m);
    check("H(T_or,M) = {1, gamma1}",
          h_tm.size() == 2 && h_tm[0].values == std::vector<Elem>{0, 0} &&
              h_tm[1].values == b.gamma1.values);
    auto assembled = build_product_pairing(b.psi1, b.psi2, b.gamma1, b.gamma2, b.m);
    check("product pairing assembly equals psi", assembled == b.psi.psi);

    TorusLattice lat = TorusLattice::line(3);
    ProcessParams p;
    p.lambda = p.delta = p.lambda_or = p.delta_or = p.lambda_xor = p.delta_xor = 1.0;
    RatedFamily f = build_2cp_family(p, lat);
    bool round_trip = true;
    for (const auto& rm : f.maps) {
      auto d1 = dual_local_map(rm.map, b.psi);
      if (!d1) { round_trip = false; break; }
      auto d2 = dual_local_map(*d1, b.psi);
      round_trip = round_trip && d2.has_value() && *d2 == rm.map;
    }
    check("dual local maps round-trip", round_trip);

    auto rank1 = informativeness_rank(b.psi, 1);
    check("|det psi| = 4", rank1.has_det && rank1.abs_det == 4);
    auto rankb = informativeness_rank(b.psi_bar, 1);
    check("|det psi_bar| = 2", rankb.has_det && rankb.abs_det == 2);
  }

  if (!witness_path.empty()) {
    try {
      LoadedWitness lw = witness_from_json(load_json_file(witness_path));
      if (lw.result.has_value())
        check("witness file " + witness_path, true);
      else
        check("witness file " + witness_path, false, lw.result.error().message());
    } catch (const std::exception& e) {
      check("witness file " + witness_path, false, e.what());
    }
  }

  if (homs_pair.size() == 2) {
    const FiniteMonoid* a = find_builtin_monoid(homs_pair[0]);
    const FiniteMonoid* c = find_builtin_monoid(homs_pair[1]);
    if (!a || !c) {
      check("homs arguments", false, "unknown built-in monoid label");
    } else {
      auto homs = enumerate_homs(*a, *c);
      if (o.format != "json") {
        std::printf("%zu homomorphisms %s -> %s\n", homs.size(), a->label.c_str(),
                    c->label.c_str());
        for (const auto& h : homs) {
          std::string line = "  [";
          for (std::size_t i = 0; i < h.values.size(); ++i)
            line += (i ? "," : "") + c->name_of(h.values[i]);
          std::printf("%s]\n", line.c_str());
        }
      }
      Json hj = Json::array();
      for (const auto& h : homs) hj.push_back(h.values);
      report.push_back({{"check", "homs"}, {"ok", true}, {"count", homs.size()}, {"values", hj}});
    }
  }

  if (o.format == "json") {
    Json out = {{"passed", all_ok}, {"checks", report}};
    std::string text = out.dump(2) + "\n";
    if (o.out_path.empty())
      std::fputs(text.c_str(), stdout);
    else
      std::ofstream(o.out_path, std::ios::binary) << text;
  }
  return all_ok ? 0 : 1;
}

// -------------------------------------------------------------- pathcheck --

int cmd_pathcheck(const CommonOpts& o, ProcessSpec spec, double horizon, int trials,
                  double random_rates, int probe_sites, const std::string& dump_log) {
  const Builtins& b = builtins();
  TorusLattice lat(spec.lengths);
  CsvWriter csv({"trial", "n_events", "constant", "value", "first_violation_s"});
  bool all_ok = true;
  for (int trial = 0; trial < trials; ++trial) {
    Rng setup(o.seed, make_stream(stream_tag::kInit, std::uint64_t(trial)));
    ProcessParams params = spec.params;
    if (random_rates > 0) {
      params.lambda = setup.real() * random_rates;
      params.delta = setup.real() * random_rates;
      params.lambda_or = setup.real() * random_rates;
      params.delta_or = setup.real() * random_rates;
      params.lambda_xor = setup.real() * random_rates;
      params.delta_xor = setup.real() * random_rates;
    }
    const FiniteMonoid& mon = spec.kind == ProcessKind::CP    ? b.t_or
                              : spec.kind == ProcessKind::CCP ? b.t_xor
                                                              : b.u;
    const DualityWitness& w = spec.kind == ProcessKind::CP    ? b.psi_add
                              : spec.kind == ProcessKind::CCP ? b.psi_canc
                                                              : b.psi;
    RatedFamily fam = spec.kind == ProcessKind::CP
                          ? build_cp_family(params.lambda, params.delta, lat)
                      : spec.kind == ProcessKind::CCP
                          ? build_ccp_family(params.lambda, params.delta, lat)
                          : build_2cp_family(params, lat);
    Configuration x = Configuration::all_neutral(lat, mon);
    for (auto& v : x.values) v = Elem(setup.uniform_below(mon.size()));
    Configuration y = Configuration::all_neutral(lat, mon);
    for (int k = 0; k < probe_sites; ++k)
      y[(long long)setup.uniform_below((std::uint64_t)lat.site_count())] =
          Elem(1 + setup.uniform_below(mon.size() - 1));
    if (trial == 0 && !dump_log.empty()) {
      EventLog log = sample_event_log(fam, horizon, o.seed, 0);
      std::ofstream f(dump_log, std::ios::binary);
      f << event_log_to_csv(log, fam);
    }
    auto rep = pathwise_duality_check(x, y, fam, w, horizon, o.seed, std::uint64_t(trial));
    all_ok = all_ok && rep.constant;
    csv.cell(trial).cell((long long)rep.n_events).cell((long long)(rep.constant ? 1 : 0));
    csv.cell(w.T->name_of(rep.value)).cell(rep.first_violation_s);
    csv.end_row();
  }
  Json eff = {{"process", spec.kind == ProcessKind::CP    ? "cp"
                          : spec.kind == ProcessKind::CCP ? "ccp"
                                                          : "2cp"},
              {"lengths", spec.lengths},
              {"T", horizon},
              {"trials", trials},
              {"random_rates", random_rates},
              {"probe_sites", probe_sites}};
  emit(o, "pathcheck", csv.str(), all_ok, eff, true);
  return all_ok ? 0 : 1;
}

// ------------------------------------------------------------------ exact --

int cmd_exact(const CommonOpts& o, ProcessSpec spec, double t, double eps, int residuals,
              bool ranks, bool counterexample, bool lumpability, bool absorption,
              double tolerance) {
  const Builtins& b = builtins();
  TorusLattice lat(spec.lengths);
  CsvWriter csv({"check", "quantity", "value", "bound", "ok"});
  bool all_ok = true;
  auto row = [&](const std::string& name, const std::string& qty, double value, double bound,
                 bool ok) {
    csv.cell(name).cell(qty).cell(value).cell(bound).cell((long long)(ok ? 1 : 0));
    csv.end_row();
    all_ok = all_ok && ok;
  };

  if (residuals > 0) {
    Rng rng(o.seed, 0);
    double max_res = 0, max_interp = 0;
    for (int i = 0; i < residuals; ++i) {
      int which = int(rng.uniform_below(3));
      const FiniteMonoid& mon = which == 0 ? b.t_or : which == 1 ? b.t_xor : b.u;
      const DualityWitness& w = which == 0 ? b.psi_add : which == 1 ? b.psi_canc : b.psi;
      RatedFamily fam =
          which == 0   ? build_cp_family(spec.params.lambda, spec.params.delta, lat)
          : which == 1 ? build_ccp_family(spec.params.lambda, spec.params.delta, lat)
                       : build_2cp_family(spec.params, lat);
      Configuration x = Configuration::all_neutral(lat, mon);
      for (auto& v : x.values) v = Elem(rng.uniform_below(mon.size()));
      Configuration y = Configuration::all_neutral(lat, mon);
      y[(long long)rng.uniform_below((std::uint64_t)lat.site_count())] =
          Elem(1 + rng.uniform_below(mon.size() - 1));
      double tt = t * rng.real();
      auto rep = duality_residual(x, y, fam, w, tt, eps, 4);
      max_res = std::max(max_res, rep.residual);
      max_interp = std::max(max_interp, rep.max_interpolation_deviation);
    }
    row("residuals", "max_residual", max_res, tolerance, max_res <= tolerance);
    row("residuals", "max_interpolation_deviation", max_interp, tolerance,
        max_interp <= tolerance);
  }

  if (ranks) {
    auto r1 = informativeness_rank(b.psi, 1);
    row("rank", "psi_1site_absdet", double(r1.abs_det), 4, r1.abs_det == 4 && r1.rank == 4);
    auto r2 = informativeness_rank(b.psi, 2);
    row("rank", "psi_2site_rank", double(r2.rank), 16, r2.rank == 16);
    auto rb = informativeness_rank(b.psi_bar, 1);
    row("rank", "psi_bar_absdet", double(rb.abs_det), 2, rb.abs_det == 2 && rb.rank == 3);
  }

  if (counterexample) {
    auto rep = counterexample_check();
    row("counterexample", "tv_distance", rep.tv_distance, 0.5, rep.passes());
  }

  if (lumpability) {
    ProcessParams p = spec.params;
    p.delta_or = 0;
    p.lambda_xor = 0;
    RatedFamily fam = build_2cp_family(p, lat);
    StateCodec fine(lat, b.u);
    StateCodec coarse(lat, b.u_bar);
    SparseGenerator gen(fam, fine);
    auto proj = sitewise_projection(fine, coarse, [&](Elem v) { return b.forget(v); });
    auto rep = lumpability_check(gen, proj, coarse.state_count());
    row("lumpability", "blocks", double(rep.blocks), double(coarse.state_count()), rep.lumpable);
  }

  if (absorption) {
    RatedFamily fam = build_ccp_family(spec.params.lambda, spec.params.delta, lat);
    Configuration y = single_site_config(lat, b.t_xor, lat.site_count() / 2, 1);
    auto res = absorption_probability(y, fam);
    StateCodec codec(lat, b.t_xor);
    SparseGenerator gen(fam, codec);
    auto mu = transient(DistributionVector::point_mass(codec.state_count(), codec.encode(y)), gen,
                        400.0, 1e-12);
    double limit = mu.probabilities[0];
    row("absorption", "linear_vs_transient", std::fabs(res.probability - limit), 1e-6,
        std::fabs(res.probability - limit) <= 1e-6 && !res.singular);
  }

  Json eff = {{"lengths", spec.lengths}, {"t", t},         {"eps", eps},
              {"residuals", residuals},  {"ranks", ranks}, {"tolerance", tolerance}};
  emit(o, "exact", csv.str(), all_ok, eff, true);
  return all_ok ? 0 : 1;
}

// ------------------------------------------------------------------- scan --

int cmd_scan(const CommonOpts& o, const std::string& process, const std::string& lambda_grid,
             double delta, const std::string& l_grid, double horizon, int replicas) {
  ScanSpec spec;
  spec.kind = process == "cp" ? ProcessKind::CP : ProcessKind::CCP;
  spec.lambdas = parse_grid(lambda_grid);
  spec.delta = delta;
  for (long long L : parse_grid_ll(l_grid)) spec.lattice_sizes.push_back(int(L));
  spec.horizon = horizon;
  spec.replicas = replicas;
  spec.seed = o.seed;
  spec.workers = worker_count(o);
  auto rows = survival_scan(spec);
  CsvWriter csv({"lambda", "delta", "L", "T", "replicas", "survived", "frequency",
                 "ci_halfwidth_99"});
  for (const auto& r : rows) {
    csv.cell(r.lambda).cell(r.delta).cell(r.lattice_size).cell(r.horizon).cell(r.replicas);
    csv.cell(r.survived).cell(r.frequency).cell(r.ci_halfwidth);
    csv.end_row();
  }
  Json eff = {{"process", process},   {"lambdas", spec.lambdas}, {"delta", delta},
              {"L", spec.lattice_sizes}, {"T", horizon},         {"replicas", replicas}};
  emit(o, "scan", csv.str(), true, eff, true, /*evidence_only=*/true);
  return 0;
}

// ----------------------------------------------------------------- parity --

int cmd_parity(const CommonOpts& o, double lambda, double delta, int L, double s, double p,
               const std::string& z_sizes, int replicas, double slack) {
  auto rows = parity_experiment(lambda, delta, L, s, p, parse_grid_ll(z_sizes), replicas, o.seed,
                                worker_count(o));
  CsvWriter csv({"z_size", "replicas", "odd", "p_odd", "deviation", "ci_halfwidth_99", "ok"});
  bool all_ok = true;
  double prev_dev = -1, prev_hw = 0;
  for (const auto& r : rows) {
    bool ok = true;
    if (r.z_size >= 100) ok = r.deviation <= slack + 3 * r.ci_halfwidth;
    if (prev_dev >= 0)
      ok = ok && (r.deviation <= prev_dev + 3 * combined_halfwidth(prev_hw, r.ci_halfwidth));
    prev_dev = r.deviation;
    prev_hw = r.ci_halfwidth;
    all_ok = all_ok && ok;
    csv.cell(r.z_size).cell(r.replicas).cell(r.odd_count).cell(r.p_odd).cell(r.deviation);
    csv.cell(r.ci_halfwidth).cell((long long)(ok ? 1 : 0));
    csv.end_row();
  }
  Json eff = {{"lambda", lambda}, {"delta", delta}, {"L", L},
              {"s", s},           {"p", p},         {"replicas", replicas}};
  emit(o, "parity", csv.str(), all_ok, eff, true);
  return all_ok ? 0 : 1;
}

// -------------------------------------------------------------- intersect --

int cmd_intersect(const CommonOpts& o, double lambda, double delta, int L, double s, double p,
                  const std::string& z_sizes, int replicas) {
  auto rows = intersection_experiment(lambda, delta, L, s, p, parse_grid_ll(z_sizes), replicas,
                                      o.seed, worker_count(o));
  CsvWriter csv({"z_size", "replicas", "empty", "p_empty", "ci_halfwidth_99"});
  for (const auto& r : rows) {
    csv.cell(r.z_size).cell(r.replicas).cell(r.empty_count).cell(r.p_empty).cell(r.ci_halfwidth);
    csv.end_row();
  }
  Json eff = {{"lambda", lambda}, {"delta", delta}, {"L", L},
              {"s", s},           {"p", p},         {"replicas", replicas}};
  emit(o, "intersect", csv.str(), true, eff, true);
  return 0;
}

// ----------------------------------------------------------------- growth --

int cmd_growth(const CommonOpts& o, const std::string& process, double lambda, double delta,
               int L, long long init_sites, long long bound_n, const std::string& t_grid,
               int replicas) {
  auto rows = extinction_or_growth(process == "cp" ? ProcessKind::CP : ProcessKind::CCP, lambda,
                                   delta, L, init_sites, bound_n, parse_grid(t_grid), replicas,
                                   o.seed, worker_count(o));
  CsvWriter csv({"t", "N", "replicas", "mid", "p_mid", "ci_halfwidth_99"});
  for (const auto& r : rows) {
    csv.cell(r.t).cell(r.bound_n).cell(r.replicas).cell(r.mid_count).cell(r.p_mid);
    csv.cell(r.ci_halfwidth);
    csv.end_row();
  }
  Json eff = {{"process", process}, {"lambda", lambda}, {"delta", delta}, {"L", L},
              {"init_sites", init_sites}, {"N", bound_n}, {"replicas", replicas}};
  emit(o, "growth", csv.str(), true, eff, true);
  return 0;
}

// --------------------------------------------------------------- converge --

int cmd_converge(const CommonOpts& o, ProcessSpec spec, const std::string& t_grid, int replicas) {
  std::vector<ProbeSpec> probes = {
      {"one_11", {{0, Elem(3)}}},
      {"one_10", {{0, Elem(2)}}},
      {"one_01", {{0, Elem(1)}}},
      {"pair_11_11", {{0, Elem(3)}, {1, Elem(3)}}},
      {"pair_10_01", {{0, Elem(2)}, {3, Elem(1)}}},
  };
  auto rows = convergence_to_nu(spec.params, spec.lengths[0], probes, parse_grid(t_grid),
                                replicas, o.seed, worker_count(o));
  CsvWriter csv({"probe", "t", "replicas", "forward_mean", "forward_hw", "dual_extinct",
                 "dual_hw", "difference", "combined_hw", "ok"});
  bool all_ok = true;
  for (const auto& r : rows) {
    bool ok = r.difference <= 3 * r.combined_hw;
    all_ok = all_ok && ok;
    csv.cell(r.probe).cell(r.t).cell(r.replicas).cell(r.forward_mean).cell(r.forward_hw);
    csv.cell(r.dual_extinct).cell(r.dual_hw).cell(r.difference).cell(r.combined_hw);
    csv.cell((long long)(ok ? 1 : 0));
    csv.end_row();
  }
  Json eff = {{"L", spec.lengths[0]}, {"t_grid", t_grid}, {"replicas", replicas}};
  emit(o, "converge", csv.str(), all_ok, eff, true);
  return all_ok ? 0 : 1;
}

// ------------------------------------------------------------------ drift --

int cmd_drift(const CommonOpts& o, int window, const std::string& lambda_s,
              const std::string& delta_s) {
  Rational lambda = parse_rational(lambda_s);
  Rational delta = parse_rational(delta_s);
  auto rep = drift_enumeration(window, lambda, delta);
  CsvWriter csv({"K", "lambda", "delta", "configurations", "max_drift", "max_drift_exact",
                 "all_nonpositive", "argmax_patterns"});
  std::string patterns;
  for (std::size_t i = 0; i < rep.argmax_patterns.size() && i < 8; ++i)
    patterns += (i ? ";" : "") + rep.argmax_patterns[i];
  csv.cell(window).cell(lambda.to_double()).cell(delta.to_double());
  csv.cell((long long)rep.configurations).cell(rep.max_drift.to_double());
  csv.cell(rep.max_drift.str()).cell((long long)(rep.all_nonpositive ? 1 : 0)).cell(patterns);
  csv.end_row();
  emit(o, "drift", csv.str(), true, Json{{"K", window}}, false);
  std::printf("max drift %s over %zu configurations (%s)\n", rep.max_drift.str().c_str(),
              rep.configurations, rep.all_nonpositive ? "nonpositive" : "POSITIVE");
  return 0;
}

// -------------------------------------------------------------- matrixsys --

int cmd_matrixsys(const CommonOpts& o, double lambda, double delta, int L, double horizon,
                  int logs, int probes, const std::string& t_grid, int replicas) {
  const Builtins& b = builtins();
  TorusLattice lat = TorusLattice::line(L);
  CsvWriter csv({"check", "index", "value", "ok"});
  bool all_ok = true;

  for (int i = 0; i < logs; ++i) {
    Rng rng(o.seed, make_stream(stream_tag::kInit, std::uint64_t(i)));
    Configuration x0 = Configuration::all_neutral(lat, b.t_xor);
    for (auto& v : x0.values) v = Elem(rng.uniform_below(2));
    auto rep = replay_equivalence_check(lambda, delta, lat, x0, horizon, o.seed, std::uint64_t(i));
    all_ok = all_ok && rep.equal;
    csv.cell("replay").cell(i).cell(double(rep.events)).cell((long long)(rep.equal ? 1 : 0));
    csv.end_row();
  }

  CancellativeMatrixSystem sys = build_matrix_system(lambda, delta, lat);
  auto summ = matrix_summability(sys);
  csv.cell("summability_primal").cell(0).cell(summ.primal).cell((long long)1);
  csv.end_row();
  csv.cell("summability_adjoint").cell(0).cell(summ.adjoint).cell((long long)1);
  csv.end_row();
  for (int i = 0; i < probes; ++i) {
    Rng rng(o.seed, make_stream(stream_tag::kInit + 1, std::uint64_t(i)));
    Configuration y = Configuration::all_neutral(lat, b.t_xor);
    for (auto& v : y.values) v = Elem(rng.uniform_below(2));
    bool ok = norm_b(sys, y) == y.occupied_count();
    all_ok = all_ok && ok;
    csv.cell("norm_B").cell(i).cell(double(y.occupied_count())).cell((long long)(ok ? 1 : 0));
    csv.end_row();
  }

  auto rows = matrix_duality_check(lambda, delta, L, 0.5, 3, parse_grid(t_grid), replicas, o.seed,
                                   worker_count(o));
  for (const auto& r : rows) {
    bool ok = r.difference <= 3 * r.combined_hw;
    all_ok = all_ok && ok;
    csv.cell("xydual").cell(r.t).cell(r.difference).cell((long long)(ok ? 1 : 0));
    csv.end_row();
  }

  Json eff = {{"lambda", lambda}, {"delta", delta}, {"L", L},
              {"logs", logs},     {"probes", probes}, {"replicas", replicas}};
  emit(o, "matrixsys", csv.str(), all_ok, eff, true);
  return all_ok ? 0 : 1;
}

ProcessSpec spec_from(const Json& cfg, const std::string& process, int L, int dim,
                      const ProcessParams& params) {
  ProcessSpec spec;
  if (cfg.contains("process")) spec = process_from_json(cfg);
  if (!process.empty()) {
    spec.kind = process == "cp" ? ProcessKind::CP
                : process == "ccp" ? ProcessKind::CCP
                                   : ProcessKind::TwoCP;
  }
  if (L > 0) spec.lengths.assign(std::size_t(std::max(dim, 1)), L);
  if (spec.lengths.empty()) spec.lengths = {16};
  // flags override config-file rates when nonzero
  auto pick = [](double flag, double file) { return flag > 0 ? flag : file; };
  spec.params.lambda = pick(params.lambda, spec.params.lambda);
  spec.params.delta = pick(params.delta, spec.params.delta);
  spec.params.lambda_or = pick(params.lambda_or, spec.params.lambda_or);
  spec.params.delta_or = pick(params.delta_or, spec.params.delta_or);
  spec.params.lambda_xor = pick(params.lambda_xor, spec.params.lambda_xor);
  spec.params.delta_xor = pick(params.delta_xor, spec.params.delta_xor);
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"duality machinery for contact-type interacting particle systems"};
  app.require_subcommand(1);

  // verify
  CommonOpts vo;
  bool v_builtin = false;
  std::string v_witness;
  std::vector<std::string> v_homs;
  auto* verify = app.add_subcommand("verify", "algebraic verification suite");
  add_common(verify, vo, false);
  verify->add_flag("--builtin", v_builtin, "verify the built-in monoids and witnesses");
  verify->add_option("--witness", v_witness, "witness JSON file to verify");
  verify->add_option("--homs", v_homs, "two built-in monoid labels")->expected(2);

  // pathcheck
  CommonOpts po;
  std::string p_process = "2cp";
  int p_L = 32, p_trials = 200, p_probe_sites = 4, p_dim = 1;
  double p_T = 5.0, p_random = 2.0;
  ProcessParams p_params;
  auto* pathcheck = app.add_subcommand("pathcheck", "pathwise duality on sampled event logs");
  add_common(pathcheck, po, true);
  pathcheck->add_option("--process", p_process)->check(CLI::IsMember({"cp", "ccp", "2cp"}));
  pathcheck->add_option("--L", p_L);
  pathcheck->add_option("--dim", p_dim);
  pathcheck->add_option("--T", p_T);
  pathcheck->add_option("--trials", p_trials);
  pathcheck->add_option("--probe-sites", p_probe_sites);
  pathcheck->add_option("--random-rates", p_random, "draw rates uniformly from [0,bound]; 0 = use fixed rates");
  pathcheck->add_option("--lambda", p_params.lambda);
  pathcheck->add_option("--delta", p_params.delta);
  pathcheck->add_option("--lambda-or", p_params.lambda_or);
  pathcheck->add_option("--delta-or", p_params.delta_or);
  pathcheck->add_option("--lambda-xor", p_params.lambda_xor);
  pathcheck->add_option("--delta-xor", p_params.delta_xor);
  std::string p_dump_log;
  pathcheck->add_option("--dump-log", p_dump_log, "write the first trial's event log as CSV");

  // exact
  CommonOpts eo;
  int e_L = 3, e_residuals = 0, e_dim = 1;
  double e_t = 1.0, e_eps = 1e-10, e_tol = 1e-8;
  bool e_ranks = false, e_cx = false, e_lump = false, e_abs = false;
  ProcessParams e_params;
  e_params.lambda = 1.0;
  e_params.delta = 1.0;
  e_params.lambda_or = 0.5;
  e_params.delta_or = 0.5;
  e_params.lambda_xor = 0.5;
  e_params.delta_xor = 0.5;
  auto* exact = app.add_subcommand("exact", "exact finite-state checks");
  add_common(exact, eo, true);
  exact->add_option("--L", e_L);
  exact->add_option("--dim", e_dim);
  exact->add_option("--t", e_t);
  exact->add_option("--eps", e_eps);
  exact->add_option("--tolerance", e_tol);
  exact->add_option("--residuals", e_residuals, "number of random (x,y,t) residual triples")
      ->expected(0, 1)
      ->default_str("50");
  exact->add_flag("--ranks", e_ranks);
  exact->add_flag("--counterexample", e_cx);
  exact->add_flag("--lumpability", e_lump);
  exact->add_flag("--absorption", e_abs);

  // scan
  CommonOpts so;
  std::string s_process = "ccp", s_lambdas = "1.5", s_Ls = "200";
  double s_delta = 1.0, s_T = 200.0;
  int s_replicas = 500;
  auto* scan = app.add_subcommand("scan", "survival frequency scan from a single site");
  add_common(scan, so, true);
  scan->add_option("--process", s_process)->check(CLI::IsMember({"cp", "ccp"}));
  scan->add_option("--lambda-grid", s_lambdas);
  scan->add_option("--delta", s_delta);
  scan->add_option("--L-grid", s_Ls);
  scan->add_option("--T", s_T);
  scan->add_option("--replicas", s_replicas);

  // parity
  CommonOpts yo;
  double y_lambda = 1.0, y_delta = 1.0, y_s = 1.0, y_p = 0.5, y_slack = 0.02;
  int y_L = 256, y_replicas = 10000;
  std::string y_zs = "1,10,100";
  auto* parity = app.add_subcommand("parity", "parity indeterminacy estimates");
  add_common(parity, yo, true);
  parity->add_option("--lambda", y_lambda);
  parity->add_option("--delta", y_delta);
  parity->add_option("--L", y_L);
  parity->add_option("--s", y_s);
  parity->add_option("--p", y_p);
  parity->add_option("--z-sizes", y_zs);
  parity->add_option("--replicas", y_replicas);
  parity->add_option("--slack", y_slack);

  // intersect
  CommonOpts io_;
  double i_lambda = 2.0, i_delta = 1.0, i_s = 1.0, i_p = 1.0;
  int i_L = 128, i_replicas = 4000;
  std::string i_zs = "1,10,100";
  auto* intersect = app.add_subcommand("intersect", "non-zero intersection estimates");
  add_common(intersect, io_, true);
  intersect->add_option("--lambda", i_lambda);
  intersect->add_option("--delta", i_delta);
  intersect->add_option("--L", i_L);
  intersect->add_option("--s", i_s);
  intersect->add_option("--p", i_p);
  intersect->add_option("--z-sizes", i_zs);
  intersect->add_option("--replicas", i_replicas);

  // growth
  CommonOpts go;
  std::string g_process = "ccp", g_ts = "5,10,20,40";
  double g_lambda = 3.0, g_delta = 1.0;
  int g_L = 300, g_replicas = 2000;
  long long g_init = 1, g_N = 10;
  auto* growth = app.add_subcommand("growth", "extinction-or-growth series");
  add_common(growth, go, true);
  growth->add_option("--process", g_process)->check(CLI::IsMember({"cp", "ccp"}));
  growth->add_option("--lambda", g_lambda);
  growth->add_option("--delta", g_delta);
  growth->add_option("--L", g_L);
  growth->add_option("--init-sites", g_init);
  growth->add_option("--N", g_N);
  growth->add_option("--t-grid", g_ts);
  growth->add_option("--replicas", g_replicas);

  // converge
  CommonOpts co;
  int c_L = 64, c_replicas = 3000;
  std::string c_ts = "1,2,4,8";
  ProcessParams c_params;
  c_params.lambda = c_params.delta = 1.0;
  c_params.lambda_or = c_params.delta_or = 1.0;
  c_params.lambda_xor = c_params.delta_xor = 1.0;
  auto* converge = app.add_subcommand("converge", "forward pairing vs dual extinction");
  add_common(converge, co, true);
  converge->add_option("--L", c_L);
  converge->add_option("--t-grid", c_ts);
  converge->add_option("--replicas", c_replicas);
  converge->add_option("--lambda", c_params.lambda);
  converge->add_option("--delta", c_params.delta);
  converge->add_option("--lambda-or", c_params.lambda_or);
  converge->add_option("--delta-or", c_params.delta_or);
  converge->add_option("--lambda-xor", c_params.lambda_xor);
  converge->add_option("--delta-xor", c_params.delta_xor);

  // drift
  CommonOpts dro;
  int d_K = 14;
  std::string d_lambda = "2", d_delta = "1";
  auto* drift = app.add_subcommand("drift", "exact drift enumeration (rational arithmetic)");
  add_common(drift, dro, false);
  drift->add_option("--K", d_K);
  drift->add_option("--lambda", d_lambda);
  drift->add_option("--delta", d_delta);

  // matrixsys
  CommonOpts mo;
  double m_lambda = 1.0, m_delta = 1.0, m_T = 2.0;
  int m_L = 24, m_logs = 100, m_probes = 100, m_replicas = 4000;
  std::string m_ts = "1,2";
  auto* matrixsys = app.add_subcommand("matrixsys", "cancellative matrix-form subsystem");
  add_common(matrixsys, mo, true);
  matrixsys->add_option("--lambda", m_lambda);
  matrixsys->add_option("--delta", m_delta);
  matrixsys->add_option("--L", m_L);
  matrixsys->add_option("--T", m_T);
  matrixsys->add_option("--logs", m_logs);
  matrixsys->add_option("--probes", m_probes);
  matrixsys->add_option("--t-grid", m_ts);
  matrixsys->add_option("--replicas", m_replicas);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return cmd_verify(vo, v_builtin, v_witness, v_homs);
    if (*pathcheck)
      return cmd_pathcheck(po, spec_from(load_config(po), p_process, p_L, p_dim, p_params), p_T,
                           p_trials, p_random, p_probe_sites, p_dump_log);
    if (*exact) {
      bool none = e_residuals == 0 && !e_ranks && !e_cx && !e_lump && !e_abs;
      if (none) {
        e_residuals = 20;
        e_ranks = e_cx = e_lump = e_abs = true;
      }
      return cmd_exact(eo, spec_from(load_config(eo), "2cp", e_L, e_dim, e_params), e_t, e_eps,
                       e_residuals, e_ranks, e_cx, e_lump, e_abs, e_tol);
    }
    if (*scan) return cmd_scan(so, s_process, s_lambdas, s_delta, s_Ls, s_T, s_replicas);
    if (*parity)
      return cmd_parity(yo, y_lambda, y_delta, y_L, y_s, y_p, y_zs, y_replicas, y_slack);
    if (*intersect)
      return cmd_intersect(io_, i_lambda, i_delta, i_L, i_s, i_p, i_zs, i_replicas);
    if (*growth)
      return cmd_growth(go, g_process, g_lambda, g_delta, g_L, g_init, g_N, g_ts, g_replicas);
    if (*converge)
      return cmd_converge(co, spec_from(load_config(co), "2cp", c_L, 1, c_params), c_ts,
                          c_replicas);
    if (*drift) return cmd_drift(dro, d_K, d_lambda, d_delta);
    if (*matrixsys)
      return cmd_matrixsys(mo, m_lambda, m_delta, m_L, m_T, m_logs, m_probes, m_ts, m_replicas);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
