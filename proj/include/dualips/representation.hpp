// Multiplicative representations of a monoid in a unital commutative
// algebra, the one-hot indicator representation with its convolution
// product, and exact affine-independence tests.
#pragma once

#include <vector>

#include "dualips/linalg.hpp"
#include "dualips/monoid.hpp"

namespace dualips {

// Vectors are exact integers; every representation the library ships is
// integral. The algebra product is either pointwise or the convolution
// product on R^T induced by the monoid operation.
struct Representation {
  enum class Product { Pointwise, Convolution };

  const FiniteMonoid* source = nullptr;
  std::size_t dim = 0;
  std::vector<std::vector<Int>> vectors;  // one per source element
  std::vector<Int> unit;
  Product product = Product::Pointwise;
  const FiniteMonoid* conv_monoid = nullptr;  // for Convolution: the target monoid
  bool faithful = false;

  std::vector<Int> multiply(const std::vector<Int>& g, const std::vector<Int>& h) const {
    std::vector<Int> out(dim, 0);
    if (product == Product::Pointwise) {
      for (std::size_t i = 0; i < dim; ++i) out[i] = g[i] * h[i];
    } else {
      for (std::size_t y = 0; y < dim; ++y)
        for (std::size_t z = 0; z < dim; ++z)
          out[conv_monoid->op(Elem(y), Elem(z))] += g[y] * h[z];
    }
    return out;
  }
};

inline bool verify_representation(const Representation& r) {
  const FiniteMonoid& m = *r.source;
  if (r.vectors.size() != m.size()) return false;
  if (r.vectors[m.neutral()] != r.unit) return false;
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = 0; b < m.size(); ++b)
      if (r.vectors[m.op(Elem(a), Elem(b))] != r.multiply(r.vectors[a], r.vectors[b]))
        return false;
  bool injective = true;
  for (std::size_t a = 0; a < m.size() && injective; ++a)
    for (std::size_t b = a + 1; b < m.size(); ++b)
      if (r.vectors[a] == r.vectors[b]) injective = false;
  return injective == r.faithful;
}

// gamma(x) = one-hot indicator of x in R^T, with the convolution product
// (g*h)(x) = sum_{y,z: y@z=x} g(y)h(z); unit is the indicator of the
// neutral element. Always faithful, and the indicator set is affinely
// independent (simplex vertices).
inline Representation indicator_representation(const FiniteMonoid& t) {
  Representation r;
  r.source = &t;
  r.dim = t.size();
  r.product = Representation::Product::Convolution;
  r.conv_monoid = &t;
  r.vectors.assign(t.size(), std::vector<Int>(t.size(), 0));
  for (std::size_t x = 0; x < t.size(); ++x) r.vectors[x][x] = 1;
  r.unit = r.vectors[t.neutral()];
  r.faithful = true;
  return r;
}

// True iff the only zero-sum scalar combination annihilating the vectors is
// the trivial one; rank test on difference vectors, exact.
inline bool check_affine_independence(const std::vector<std::vector<Int>>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("check_affine_independence: empty input");
  if (vectors.size() == 1) return true;
  IntMatrix diffs;
  for (std::size_t i = 1; i < vectors.size(); ++i) {
    std::vector<Int> d(vectors[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = vectors[i][j] - vectors[0][j];
    diffs.push_back(std::move(d));
  }
  return int_rank(diffs) == vectors.size() - 1;
}

// Floating-point variant for user-supplied non-integer vectors.
inline bool check_affine_independence(const std::vector<std::vector<double>>& vectors,
                                      double tol = 1e-9) {
  if (vectors.empty()) throw std::invalid_argument("check_affine_independence: empty input");
  if (vectors.size() == 1) return true;
  std::vector<std::vector<double>> diffs;
  for (std::size_t i = 1; i < vectors.size(); ++i) {
    std::vector<double> d(vectors[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = vectors[i][j] - vectors[0][j];
    diffs.push_back(std::move(d));
  }
  return double_rank(diffs, tol) == vectors.size() - 1;
}

}  // namespace dualips
