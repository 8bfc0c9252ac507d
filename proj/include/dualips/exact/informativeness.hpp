// Rank certificates for distribution-determining pairings on small
// lattices, and the single-site counterexample showing that a faithful
// scalar representation of a weakly informative pairing need not be
// informative.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "dualips/builtins.hpp"
#include "dualips/duality.hpp"
#include "dualips/linalg.hpp"

namespace dualips {

struct RankReport {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 0;
  bool full_column_rank = false;
  bool has_det = false;
  long long abs_det = 0;  // |det| when the embedded matrix is square
  bool used_indicator_embedding = false;
};

// Builds the |R|^sites x |S|^sites matrix Psi(x,y) over a numeric embedding
// of T and reports its exact rank. Full column rank certifies that the
// family {Psi(.,y)} determines laws on S^sites. Targets without a scalar
// embedding are expanded through the indicator representation (each y row
// becomes |T| indicator rows).
inline RankReport informativeness_rank(const DualityWitness& w, int sites,
                                       std::uint64_t cap = std::uint64_t(1) << 12) {
  if (sites < 1) throw std::invalid_argument("informativeness_rank: sites must be >= 1");
  std::uint64_t ncols = 1, nrows = 1;
  for (int k = 0; k < sites; ++k) {
    ncols *= w.S->size();
    nrows *= w.R->size();
    if (ncols > cap || nrows > cap)
      throw std::length_error("informativeness_rank: state space exceeds cap");
  }

  auto s_digit = [&](std::uint64_t x, int site) {
    for (int k = 0; k < site; ++k) x /= w.S->size();
    return Elem(x % w.S->size());
  };
  auto r_digit = [&](std::uint64_t y, int site) {
    for (int k = 0; k < site; ++k) y /= w.R->size();
    return Elem(y % w.R->size());
  };
  auto pairing = [&](std::uint64_t x, std::uint64_t y) {
    Elem acc = w.T->neutral();
    for (int k = 0; k < sites; ++k) acc = w.T->op(acc, w(s_digit(x, k), r_digit(y, k)));
    return acc;
  };

  RankReport rep;
  rep.cols = ncols;
  IntMatrix m;
  if (w.T->embedding) {
    rep.rows = nrows;
    m.assign(nrows, std::vector<Int>(ncols));
    for (std::uint64_t y = 0; y < nrows; ++y)
      for (std::uint64_t x = 0; x < ncols; ++x)
        m[y][x] = (*w.T->embedding)[pairing(x, y)];
    if (nrows == ncols) {
      rep.has_det = true;
      rep.abs_det = std::llabs(int_determinant(m));
    }
  } else {
    rep.used_indicator_embedding = true;
    rep.rows = nrows * w.T->size();
    m.assign(rep.rows, std::vector<Int>(ncols, 0));
    for (std::uint64_t y = 0; y < nrows; ++y)
      for (std::uint64_t x = 0; x < ncols; ++x)
        m[y * w.T->size() + pairing(x, y)][x] = 1;
  }
  rep.rank = int_rank(m);
  rep.full_column_rank = (rep.rank == rep.cols);
  return rep;
}

struct CounterexampleReport {
  bool scalar_expectations_agree = false;  // gamma(psi23) expectations equal on all 4 probes
  double tv_distance = 0;                  // between the two single-site laws
  bool laws_differ = false;
  bool psi23_distributions_separate = false;  // at probe (1,1)
  bool passes() const {
    return scalar_expectations_agree && laws_differ && psi23_distributions_separate &&
           tv_distance == 0.5;
  }
};

// Single-site laws: X uniform on U, X' half on (0,0) and half on (1,1).
// The componentwise expectations of gamma(psi23(.,y)) coincide for every
// probe y although the laws differ (TV distance 1/2); the distribution of
// psi23(., (1,1)) itself tells them apart.
inline CounterexampleReport counterexample_check() {
  const Builtins& b = builtins();
  CounterexampleReport rep;
  const double law_x[4] = {0.25, 0.25, 0.25, 0.25};
  const double law_xp[4] = {0.5, 0.0, 0.0, 0.5};

  rep.scalar_expectations_agree = true;
  for (Elem y = 0; y < 4; ++y) {
    double ex[2] = {0, 0}, exp_[2] = {0, 0};
    for (Elem x = 0; x < 4; ++x) {
      Elem v = b.psi23(x, y);
      const auto& g = b.gamma_pair.vectors[v];
      for (int c = 0; c < 2; ++c) {
        ex[c] += law_x[x] * double(g[c]);
        exp_[c] += law_xp[x] * double(g[c]);
      }
    }
    if (ex[0] != exp_[0] || ex[1] != exp_[1]) rep.scalar_expectations_agree = false;
  }

  double tv = 0;
  for (int i = 0; i < 4; ++i) tv += std::fabs(law_x[i] - law_xp[i]);
  rep.tv_distance = tv / 2;
  rep.laws_differ = rep.tv_distance > 0;

  // distribution of psi23(X, (1,1)) over U vs the same for X'
  double dist_x[4] = {0, 0, 0, 0}, dist_xp[4] = {0, 0, 0, 0};
  for (Elem x = 0; x < 4; ++x) {
    dist_x[b.psi23(x, 3)] += law_x[x];
    dist_xp[b.psi23(x, 3)] += law_xp[x];
  }
  for (int i = 0; i < 4; ++i)
    if (dist_x[i] != dist_xp[i]) rep.psi23_distributions_separate = true;
  return rep;
}

}  // namespace dualips
