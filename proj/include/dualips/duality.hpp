// Duality witnesses: a pairing table psi on S x R with values in T,
// validated against the four defining conditions by exhaustive enumeration,
// plus dual maps of homomorphisms found by search.
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "dualips/monoid.hpp"
#include "dualips/result.hpp"

namespace dualips {

struct DualityWitness {
  const FiniteMonoid* S = nullptr;
  const FiniteMonoid* R = nullptr;
  const FiniteMonoid* T = nullptr;
  std::vector<Elem> psi;  // |S| x |R|, row-major
  std::string label;

  Elem operator()(Elem x, Elem y) const { return psi[std::size_t(x) * R->size() + y]; }

  std::vector<Elem> column(Elem y) const {
    std::vector<Elem> c(S->size());
    for (std::size_t x = 0; x < S->size(); ++x) c[x] = (*this)(Elem(x), y);
    return c;
  }
  std::vector<Elem> row(Elem x) const {
    std::vector<Elem> r(R->size());
    for (std::size_t y = 0; y < R->size(); ++y) r[y] = (*this)(Elem(x), y);
    return r;
  }
};

struct DualityFailure {
  int condition = 0;  // 1..4
  std::string detail;

  std::string message() const {
    return "FailedCondition(" + std::to_string(condition) + "): " + detail;
  }
};

// Conditions, in checking order:
//  (i)   psi(x1,.) = psi(x2,.) implies x1 = x2         (rows separate)
//  (ii)  {psi(.,y) : y in R} = H(S,T)                  (columns exhaust)
//  (iii) psi(.,y1) = psi(.,y2) implies y1 = y2         (columns separate)
//  (iv)  {psi(x,.) : x in S} = H(R,T)                  (rows exhaust)
// Reports only the first failure, with witnesses.
inline Result<DualityWitness, DualityFailure> verify_duality(const FiniteMonoid& S,
                                                             const FiniteMonoid& R,
                                                             const FiniteMonoid& T,
                                                             const std::vector<Elem>& psi,
                                                             std::string label = "") {
  using Res = Result<DualityWitness, DualityFailure>;
  if (psi.size() != S.size() * R.size())
    throw std::invalid_argument("verify_duality: psi table shape mismatch");
  for (Elem v : psi)
    if (v >= T.size()) throw std::invalid_argument("verify_duality: psi entry out of range");

  DualityWitness w{&S, &R, &T, psi, std::move(label)};

  for (std::size_t x1 = 0; x1 < S.size(); ++x1)
    for (std::size_t x2 = x1 + 1; x2 < S.size(); ++x2)
      if (w.row(Elem(x1)) == w.row(Elem(x2)))
        return Res::fail({1, "rows " + S.name_of(Elem(x1)) + " and " + S.name_of(Elem(x2)) +
                                 " are equal"});

  auto homs_ST = enumerate_homs(S, T);
  std::vector<std::vector<Elem>> cols;
  for (std::size_t y = 0; y < R.size(); ++y) cols.push_back(w.column(Elem(y)));
  for (std::size_t y = 0; y < R.size(); ++y)
    if (!is_hom(S, T, cols[y]))
      return Res::fail({2, "column at y=" + R.name_of(Elem(y)) + " is not in H(S,T)"});
  for (const Hom& h : homs_ST)
    if (std::find(cols.begin(), cols.end(), h.values) == cols.end())
      return Res::fail({2, "a homomorphism in H(S,T) is not represented by any column"});

  for (std::size_t y1 = 0; y1 < R.size(); ++y1)
    for (std::size_t y2 = y1 + 1; y2 < R.size(); ++y2)
      if (cols[y1] == cols[y2])
        return Res::fail({3, "columns " + R.name_of(Elem(y1)) + " and " + R.name_of(Elem(y2)) +
                                 " are equal"});

  auto homs_RT = enumerate_homs(R, T);
  std::vector<std::vector<Elem>> rows;
  for (std::size_t x = 0; x < S.size(); ++x) rows.push_back(w.row(Elem(x)));
  for (std::size_t x = 0; x < S.size(); ++x)
    if (!is_hom(R, T, rows[x]))
      return Res::fail({4, "row at x=" + S.name_of(Elem(x)) + " is not in H(R,T)"});
  for (const Hom& h : homs_RT)
    if (std::find(rows.begin(), rows.end(), h.values) == rows.end())
      return Res::fail({4, "a homomorphism in H(R,T) is not represented by any row"});

  return Res::ok(std::move(w));
}

struct NoDual {
  int element = -1;  // the y in R for which no dual value exists
  std::string message() const {
    return "NoDual: map does not preserve H(S,T) (stuck at y=" + std::to_string(element) + ")";
  }
};

// The unique m_hat with psi(m(x),y) = psi(x, m_hat(y)) for all x,y, found
// by per-element search over R. Uniqueness is condition (iii).
inline Result<Hom, NoDual> dual_hom(const Hom& m, const DualityWitness& w) {
  using Res = Result<Hom, NoDual>;
  const FiniteMonoid& S = *w.S;
  const FiniteMonoid& R = *w.R;
  Hom out{&R, &R, std::vector<Elem>(R.size(), 0)};
  for (std::size_t y = 0; y < R.size(); ++y) {
    bool found = false;
    for (std::size_t yp = 0; yp < R.size() && !found; ++yp) {
      bool ok = true;
      for (std::size_t x = 0; x < S.size() && ok; ++x)
        ok = (w(m(Elem(x)), Elem(y)) == w(Elem(x), Elem(yp)));
      if (ok) {
        out.values[y] = Elem(yp);
        found = true;
      }
    }
    if (!found) return Res::fail({int(y)});
  }
  return Res::ok(std::move(out));
}

// psi((x1,x2),(y1,y2)) := T.op( g1(psi1(x1,y1)), g2(psi2(x2,y2)) ), the
// product-pairing assembly; g1, g2 are homs from the factor targets into T.
inline std::vector<Elem> build_product_pairing(const DualityWitness& w1, const DualityWitness& w2,
                                               const Hom& g1, const Hom& g2,
                                               const FiniteMonoid& T) {
  const std::size_t s1 = w1.S->size(), s2 = w2.S->size();
  const std::size_t r1 = w1.R->size(), r2 = w2.R->size();
  std::vector<Elem> psi(s1 * s2 * r1 * r2);
  for (std::size_t x1 = 0; x1 < s1; ++x1)
    for (std::size_t x2 = 0; x2 < s2; ++x2)
      for (std::size_t y1 = 0; y1 < r1; ++y1)
        for (std::size_t y2 = 0; y2 < r2; ++y2) {
          Elem a = g1(w1(Elem(x1), Elem(y1)));
          Elem b = g2(w2(Elem(x2), Elem(y2)));
          psi[(x1 * s2 + x2) * (r1 * r2) + (y1 * r2 + y2)] = T.op(a, b);
        }
  return psi;
}

}  // namespace dualips
