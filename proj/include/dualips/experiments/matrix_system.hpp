// The cancellative process in matrix form: jumps x -> x xor A x for binary
// matrices A with finitely many ones. Generators are the translated copies
// of the single-entry infection matrices and the diagonal death matrix;
// they are emitted in the same order as the local-map family so one event
// log replays through both representations index-for-index.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dualips/configuration.hpp"
#include "dualips/event_log.hpp"
#include "dualips/family.hpp"
#include "dualips/lattice.hpp"

namespace dualips {

struct BinaryMatrix {
  std::vector<std::pair<long long, long long>> ones;  // (row, col)

  BinaryMatrix transposed() const {
    BinaryMatrix t;
    for (auto [r, c] : ones) t.ones.emplace_back(c, r);
    return t;
  }
};

struct CancellativeMatrixSystem {
  const TorusLattice* lattice = nullptr;
  struct Gen {
    BinaryMatrix matrix;
    double rate;
    std::string label;
  };
  std::vector<Gen> generators;
  std::vector<std::size_t> probe_set;  // indices into generators (the set B)
  bool translation_invariant = true;
};

// x <- x xor A x, over the two-element field, sitewise
inline void matrix_step(Configuration& x, const BinaryMatrix& a) {
  std::vector<std::pair<long long, Elem>> adds;
  adds.reserve(a.ones.size());
  for (auto [r, c] : a.ones) adds.emplace_back(r, x.values[std::size_t(c)]);
  for (auto [r, v] : adds) x.values[std::size_t(r)] = Elem(x.values[std::size_t(r)] ^ v);
}

// theta_v A: entry (r, c) -> (r + v, c + v) with wrap-around
inline BinaryMatrix translated(const BinaryMatrix& a, const TorusLattice& lat, long long v) {
  std::vector<int> shift = lat.coords(v);
  BinaryMatrix out;
  for (auto [r, c] : a.ones)
    out.ones.emplace_back(lat.translate(r, shift), lat.translate(c, shift));
  return out;
}

// the untranslated building blocks: I_k^{+/-} has its single one at
// (e_k, 0) resp. (-e_k, 0); D has it at (0, 0)
inline BinaryMatrix infection_block(const TorusLattice& lat, int axis, int dir) {
  BinaryMatrix a;
  a.ones.emplace_back(lat.neighbor(0, axis, dir), 0);
  return a;
}
inline BinaryMatrix death_block() {
  BinaryMatrix a;
  a.ones.emplace_back(0, 0);
  return a;
}

// Matches build_ccp_family's emission order: for each site i, axis k,
// dir +/-: theta_i I_k^dir at rate lambda; then theta_i D at rate delta.
inline CancellativeMatrixSystem build_matrix_system(double lambda, double delta,
                                                    const TorusLattice& lat) {
  if (lambda < 0 || delta < 0) throw std::invalid_argument("build_matrix_system: negative rate");
  CancellativeMatrixSystem sys;
  sys.lattice = &lat;
  if (lambda > 0)
    for (long long i = 0; i < lat.site_count(); ++i)
      for (int k = 0; k < lat.dim(); ++k)
        for (int dir : {+1, -1})
          sys.generators.push_back({translated(infection_block(lat, k, dir), lat, i), lambda,
                                    std::string("I") + (dir > 0 ? "+" : "-")});
  if (delta > 0)
    for (long long i = 0; i < lat.site_count(); ++i)
      sys.generators.push_back({translated(death_block(), lat, i), delta, "D"});
  if (lambda > 0) sys.probe_set.push_back(0);  // B = {I_1^+}
  return sys;
}

// Builds the matrix form from an existing rated family; only the
// cancellative single-bit family qualifies.
inline CancellativeMatrixSystem matrix_system_from_family(const RatedFamily& f) {
  CancellativeMatrixSystem sys;
  sys.lattice = f.lattice;
  for (const auto& rm : f.maps) {
    if (rm.label == "inf_xor") {
      BinaryMatrix a;
      a.ones.emplace_back(rm.site_j, rm.site_i);
      sys.generators.push_back({std::move(a), rm.rate, "I"});
    } else if (rm.label == "dth") {
      BinaryMatrix a;
      a.ones.emplace_back(rm.site_i, rm.site_i);
      sys.generators.push_back({std::move(a), rm.rate, "D"});
    } else {
      throw std::invalid_argument("matrix_system_from_family: NotCancellative (map " + rm.label +
                                  ")");
    }
  }
  if (!sys.generators.empty() && sys.generators[0].label == "I") sys.probe_set.push_back(0);
  return sys;
}

// per-column rate sums, sup over sites of sum_A a(A) |{j : A(j,i) = 1}|;
// finite on a torus by construction, reported for diagnostics (the
// adjoint value uses rows instead)
struct MatrixSummability {
  double primal = 0;
  double adjoint = 0;
};

inline MatrixSummability matrix_summability(const CancellativeMatrixSystem& sys) {
  std::vector<double> col(std::size_t(sys.lattice->site_count()), 0.0);
  std::vector<double> row(std::size_t(sys.lattice->site_count()), 0.0);
  for (const auto& g : sys.generators)
    for (auto [r, c] : g.matrix.ones) {
      col[std::size_t(c)] += g.rate;
      row[std::size_t(r)] += g.rate;
    }
  MatrixSummability out;
  for (double v : col) out.primal = std::max(out.primal, v);
  for (double v : row) out.adjoint = std::max(out.adjoint, v);
  return out;
}

inline CancellativeMatrixSystem transposed_system(const CancellativeMatrixSystem& sys) {
  CancellativeMatrixSystem out;
  out.lattice = sys.lattice;
  out.translation_invariant = sys.translation_invariant;
  out.probe_set = sys.probe_set;
  for (const auto& g : sys.generators)
    out.generators.push_back({g.matrix.transposed(), g.rate, g.label + "^T"});
  return out;
}

// ||x||_B = #{ translations v : some (theta_v B)^T x != 0 }: the number of
// shifts at which a probe matrix can produce odd overlap with x.
inline long long norm_b(const CancellativeMatrixSystem& sys, const Configuration& x) {
  long long count = 0;
  for (long long v = 0; v < sys.lattice->site_count(); ++v) {
    bool hit = false;
    for (std::size_t bi : sys.probe_set) {
      BinaryMatrix tb = translated(sys.generators[bi].matrix, *sys.lattice, v);
      for (auto [r, c] : tb.ones)
        if (x.values[std::size_t(r)] != 0) {
          hit = true;
          break;
        }
      if (hit) break;
    }
    count += hit;
  }
  return count;
}

struct ReplayReport {
  bool equal = true;
  std::size_t events = 0;
  std::size_t first_mismatch = 0;
};

// Replays one event log of the cancellative family through both the
// local-map and the matrix representation and compares states event by
// event. Requires the aligned emission orders above.
inline ReplayReport replay_equivalence_check(double lambda, double delta, const TorusLattice& lat,
                                             const Configuration& x0, double horizon,
                                             std::uint64_t seed, std::uint64_t stream) {
  RatedFamily fam = build_ccp_family(lambda, delta, lat);
  CancellativeMatrixSystem sys = build_matrix_system(lambda, delta, lat);
  if (fam.maps.size() != sys.generators.size())
    throw std::logic_error("replay_equivalence_check: family/system size mismatch");
  EventLog log = sample_event_log(fam, horizon, seed, stream);
  Configuration via_maps = x0;
  Configuration via_matrices = x0;
  ReplayReport rep;
  rep.events = log.size();
  for (std::size_t k = 0; k < log.events.size(); ++k) {
    const Event& e = log.events[k];
    fam.maps[e.instance].map.apply_in_place(via_maps);
    matrix_step(via_matrices, sys.generators[e.instance].matrix);
    if (via_maps.values != via_matrices.values) {
      rep.equal = false;
      rep.first_mismatch = k;
      return rep;
    }
  }
  return rep;
}

}  // namespace dualips
