// Rated map families: the CP, cCP and 2CP generators as lists of local
// homomorphisms with rates, the summability diagnostic, and the lumping /
// order helpers for the coupled process.
#pragma once

#include <string>
#include <vector>

#include "dualips/builtins.hpp"
#include "dualips/local_map.hpp"

namespace dualips {

// six rates of the coupled process: shared, or-only, xor-only
struct ProcessParams {
  double lambda = 0, delta = 0;
  double lambda_or = 0, delta_or = 0;
  double lambda_xor = 0, delta_xor = 0;

  void check() const {
    for (double r : {lambda, delta, lambda_or, delta_or, lambda_xor, delta_xor})
      if (r < 0) throw std::invalid_argument("ProcessParams: negative rate");
  }
};

struct RatedMap {
  LocalHomMatrix map;
  double rate;
  std::string label;
  long long site_i = -1;  // source site for infections, the site for deaths
  long long site_j = -1;  // target site for infections, -1 for deaths
};

struct RatedFamily {
  const FiniteMonoid* monoid = nullptr;
  const TorusLattice* lattice = nullptr;
  std::vector<RatedMap> maps;
  std::string label;

  double total_rate() const {
    double s = 0;
    for (const auto& m : maps) s += m.rate;
    return s;
  }
};

namespace detail {

// single-bit infection x(j) <- x(i) op x(j); over U the per-coordinate
// hom pair picks which marginal the infection touches
inline LocalHomMatrix infection_map(const FiniteMonoid& mon, const TorusLattice& lat, long long i,
                                    long long j, const Hom& source_hom, const Hom& target_hom) {
  LocalHomMatrix m(mon, lat);
  m.set(i, j, source_hom);
  m.set(j, j, target_hom);
  return m;
}

inline LocalHomMatrix death_map(const FiniteMonoid& mon, const TorusLattice& lat, long long i,
                                const Hom& kept) {
  LocalHomMatrix m(mon, lat);
  m.set(i, i, kept);  // constant-neutral kills everything; (id,o)/(o,id) kill one coordinate
  return m;
}

}  // namespace detail

// CP(lambda,delta) over (T,max) (infect = true) or cCP over (T,xor).
inline RatedFamily build_cp_like_family(const FiniteMonoid& mon, const TorusLattice& lat,
                                        double lambda, double delta, const std::string& inf_label,
                                        const std::string& dth_label) {
  if (lambda < 0 || delta < 0) throw std::invalid_argument("build family: negative rate");
  RatedFamily f{&mon, &lat, {}, inf_label + "/" + dth_label};
  Hom id = identity_hom(mon);
  if (lambda > 0)
    for (long long i = 0; i < lat.site_count(); ++i)
      for (int k = 0; k < lat.dim(); ++k)
        for (int dir : {+1, -1}) {
          long long j = lat.neighbor(i, k, dir);
          f.maps.push_back({detail::infection_map(mon, lat, i, j, id, id), lambda, inf_label, i, j});
        }
  if (delta > 0) {
    Hom o = constant_neutral_hom(mon, mon);
    for (long long i = 0; i < lat.site_count(); ++i)
      f.maps.push_back({detail::death_map(mon, lat, i, o), delta, dth_label, i, -1});
  }
  return f;
}

inline RatedFamily build_cp_family(double lambda, double delta, const TorusLattice& lat) {
  return build_cp_like_family(builtins().t_or, lat, lambda, delta, "inf_or", "dth");
}
inline RatedFamily build_ccp_family(double lambda, double delta, const TorusLattice& lat) {
  return build_cp_like_family(builtins().t_xor, lat, lambda, delta, "inf_xor", "dth");
}

// The coupled family over U. Emission order (deterministic, documented):
// INF, inf1, inf2 over ordered neighbor pairs (site-major, axis, +/-),
// then DTH, dth1, dth2 over sites; zero-rate groups omitted. On a d-dim
// torus with n sites this yields 2dn instances per nonzero infection rate
// and n per nonzero death rate.
inline RatedFamily build_2cp_family(const ProcessParams& p, const TorusLattice& lat) {
  p.check();
  const Builtins& b = builtins();
  const FiniteMonoid& u = b.u;
  RatedFamily f{&u, &lat, {}, "2cp"};

  Hom id = identity_hom(u);
  Hom o = constant_neutral_hom(u, u);
  Hom id_o{&u, &u, {0, 0, 2, 2}};  // (id,o): keeps the first coordinate
  Hom o_id{&u, &u, {0, 1, 0, 1}};  // (o,id): keeps the second coordinate

  struct InfKind {
    double rate;
    const Hom* source;
    const char* label;
  };
  struct DthKind {
    double rate;
    const Hom* kept;
    const char* label;
  };
  const InfKind infections[] = {
      {p.lambda, &id, "INF"}, {p.lambda_or, &id_o, "inf1"}, {p.lambda_xor, &o_id, "inf2"}};
  const DthKind deaths[] = {
      {p.delta, &o, "DTH"}, {p.delta_or, &o_id, "dth1"}, {p.delta_xor, &id_o, "dth2"}};

  for (const auto& kind : infections) {
    if (kind.rate <= 0) continue;
    for (long long i = 0; i < lat.site_count(); ++i)
      for (int k = 0; k < lat.dim(); ++k)
        for (int dir : {+1, -1}) {
          long long j = lat.neighbor(i, k, dir);
          f.maps.push_back(
              {detail::infection_map(u, lat, i, j, *kind.source, id), kind.rate, kind.label, i, j});
        }
  }
  for (const auto& kind : deaths) {
    if (kind.rate <= 0) continue;
    for (long long i = 0; i < lat.site_count(); ++i)
      f.maps.push_back({detail::death_map(u, lat, i, *kind.kept), kind.rate, kind.label, i, -1});
  }
  return f;
}

// sup over sites i of sum over maps with i in D(m) of r_m * (|R(m[i])|+1)
inline double summability_value(const RatedFamily& f) {
  if (!f.lattice) return 0.0;
  std::vector<double> per_site(std::size_t(f.lattice->site_count()), 0.0);
  for (const auto& rm : f.maps)
    for (long long j : rm.map.domain_sites())
      per_site[std::size_t(j)] += rm.rate * double(rm.map.relevant_sites(j).size() + 1);
  double sup = 0;
  for (double v : per_site) sup = std::max(sup, v);
  return sup;
}

// Dualizes every map; rates and instance order are preserved, so event
// logs can be replayed against the dual family index-for-index.
inline Result<RatedFamily, NoDual> dualize_family(const RatedFamily& f, const DualityWitness& w) {
  using Res = Result<RatedFamily, NoDual>;
  RatedFamily out{w.R, f.lattice, {}, f.label + "_dual"};
  for (const auto& rm : f.maps) {
    auto d = dual_local_map(rm.map, w);
    if (!d) return Res::fail(d.error());
    // infections transpose: record the flipped sites for readability
    out.maps.push_back({std::move(d).value(), rm.rate, rm.label + "_hat",
                        rm.site_j >= 0 ? rm.site_j : rm.site_i, rm.site_j >= 0 ? rm.site_i : -1});
  }
  return Res::ok(std::move(out));
}

// sitewise lumping of a U-configuration onto the 3-state monoid
inline Configuration forget_project(const Configuration& x) {
  const Builtins& b = builtins();
  if (x.monoid != &b.u && !x.monoid->same_structure(b.u))
    throw std::invalid_argument("forget_project: configuration is not over U");
  Configuration out{x.lattice, &b.u_bar, {}};
  out.values.resize(x.values.size());
  for (std::size_t i = 0; i < x.values.size(); ++i) out.values[i] = b.forget(x.values[i]);
  return out;
}

// true iff the first coordinate dominates the second at every site,
// i.e. no site is in state (0,1)
inline bool order_holds(const Configuration& x) {
  for (Elem v : x.values)
    if (v == 1) return false;
  return true;
}

}  // namespace dualips
