// Local homomorphisms on S^Lambda in matrix form: a sparse matrix of
// single-site homs with implicit defaults (identity on the diagonal,
// constant-neutral off it), so the stored entry set is exactly the
// non-default set Delta. Site j of the image is the monoid product of
// entry (i,j) applied to x(i) over all i. Dualization transposes the
// entry positions and dualizes each entry.
#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualips/configuration.hpp"
#include "dualips/duality.hpp"
#include "dualips/lattice.hpp"
#include "dualips/monoid.hpp"
#include "dualips/result.hpp"

namespace dualips {

class LocalHomMatrix {
 public:
  struct Entry {
    long long i, j;
    Hom hom;
  };

  LocalHomMatrix(const FiniteMonoid& mon, const TorusLattice& lat) : mon_(&mon), lat_(&lat) {}

  const FiniteMonoid& monoid() const { return *mon_; }
  const TorusLattice& lattice() const { return *lat_; }

  // Stores entry (i,j) unless it equals the default for its position, so
  // the stored set stays exactly Delta.
  void set(long long i, long long j, Hom hom) {
    if (hom.values.size() != mon_->size())
      throw std::invalid_argument("LocalHomMatrix: hom over the wrong monoid");
    bool is_default = (i == j) ? hom.is_identity() : hom.is_constant_neutral();
    auto& col = columns_[j];
    auto it = std::find_if(col.begin(), col.end(), [&](const auto& e) { return e.first == i; });
    if (is_default) {
      if (it != col.end()) col.erase(it);
      if (col.empty()) columns_.erase(j);
      return;
    }
    if (it != col.end())
      it->second = std::move(hom);
    else
      col.emplace_back(i, std::move(hom));
  }

  std::vector<Entry> delta() const {
    std::vector<Entry> out;
    for (const auto& [j, col] : columns_)
      for (const auto& [i, h] : col) out.push_back({i, j, h});
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
      return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    return out;
  }

  // columns with at least one non-default entry == sites the map can change
  std::vector<long long> domain_sites() const {
    std::vector<long long> out;
    for (const auto& [j, col] : columns_) out.push_back(j);
    return out;
  }

  // relevant sites of the coordinate map at column j
  std::vector<long long> relevant_sites(long long j) const {
    std::vector<long long> out;
    auto it = columns_.find(j);
    if (it == columns_.end()) return {j};
    bool diag_stored = false;
    for (const auto& [i, h] : it->second) {
      if (i == j) {
        diag_stored = true;
        if (!h.is_constant_neutral()) out.push_back(i);
      } else {
        out.push_back(i);
      }
    }
    if (!diag_stored) out.push_back(j);  // implicit identity
    std::sort(out.begin(), out.end());
    return out;
  }

  Configuration apply(const Configuration& x) const {
    if (x.monoid != mon_ && !x.monoid->same_structure(*mon_))
      throw std::invalid_argument("LocalHomMatrix: MismatchedSpaces (monoid)");
    if (x.lattice->site_count() != lat_->site_count())
      throw std::invalid_argument("LocalHomMatrix: MismatchedSpaces (lattice)");
    Configuration out = x;
    apply_in_place(out);
    return out;
  }

  // Buffers the new column values before writing so that every column is
  // computed from the pre-image, as the matrix form requires. Re-entrant:
  // shared map instances may be applied from several replica threads.
  void apply_in_place(Configuration& x) const {
    std::pair<long long, Elem> buf[8];
    std::size_t used = 0;
    std::vector<std::pair<long long, Elem>> overflow;
    for (const auto& [j, col] : columns_) {
      Elem acc = mon_->neutral();
      bool diag_stored = false;
      for (const auto& [i, h] : col) {
        acc = mon_->op(acc, h(x.values[std::size_t(i)]));
        if (i == j) diag_stored = true;
      }
      if (!diag_stored) acc = mon_->op(acc, x.values[std::size_t(j)]);
      if (used < 8)
        buf[used++] = {j, acc};
      else
        overflow.emplace_back(j, acc);
    }
    for (std::size_t k = 0; k < used; ++k) x.values[std::size_t(buf[k].first)] = buf[k].second;
    for (const auto& [j, v] : overflow) x.values[std::size_t(j)] = v;
  }

  friend bool operator==(const LocalHomMatrix& a, const LocalHomMatrix& b) {
    auto da = a.delta(), db = b.delta();
    if (da.size() != db.size()) return false;
    for (std::size_t k = 0; k < da.size(); ++k)
      if (da[k].i != db[k].i || da[k].j != db[k].j || !(da[k].hom == db[k].hom)) return false;
    return true;
  }

 private:
  const FiniteMonoid* mon_;
  const TorusLattice* lat_;
  std::map<long long, std::vector<std::pair<long long, Hom>>> columns_;
};

// Dual map: entry (i,j) of the dual is the psi-dual of entry (j,i) of the
// primal (transpose semantics, as the dualization proof computes it).
inline Result<LocalHomMatrix, NoDual> dual_local_map(const LocalHomMatrix& m,
                                                     const DualityWitness& w) {
  using Res = Result<LocalHomMatrix, NoDual>;
  LocalHomMatrix out(*w.R, m.lattice());
  for (const auto& e : m.delta()) {
    auto d = dual_hom(e.hom, w);
    if (!d) return Res::fail(d.error());
    out.set(e.j, e.i, std::move(d).value());
  }
  return Res::ok(std::move(out));
}

}  // namespace dualips
