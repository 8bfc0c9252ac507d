// Finite commutative monoids and their homomorphism spaces.
//
// Elements are dense indices 0..n-1; labels and (optional) integer
// embeddings ride along as metadata. All monoids here are finite and carry
// the discrete topology, so "continuous homomorphism" means plain
// homomorphism and no continuity checks appear anywhere.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dualips/result.hpp"

namespace dualips {

using Elem = std::uint8_t;

struct MonoidError {
  enum class Kind { BadShape, TooLarge, NotAssociative, NotCommutative, NeutralViolated };
  Kind kind;
  int a = -1, b = -1, c = -1;

  std::string message() const {
    switch (kind) {
      case Kind::BadShape:
        return "operation table is not square or has out-of-range entries";
      case Kind::TooLarge:
        return "monoid size exceeds the supported maximum";
      case Kind::NotAssociative:
        return "NotAssociative(" + std::to_string(a) + "," + std::to_string(b) + "," +
               std::to_string(c) + ")";
      case Kind::NotCommutative:
        return "NotCommutative(" + std::to_string(a) + "," + std::to_string(b) + ")";
      case Kind::NeutralViolated:
        return "NeutralViolated(" + std::to_string(a) + ")";
    }
    return "unknown";
  }
};

class FiniteMonoid {
 public:
  FiniteMonoid() = default;  // empty; populated instances come from validate_monoid

  std::string label;
  // Optional scalar embedding (multiplicative, unit at the neutral element)
  // for monoids that are sub-monoids of the complex numbers; drives the
  // numeric side of informativeness checks.
  std::optional<std::vector<long long>> embedding;
  std::vector<std::string> element_names;

  std::size_t size() const { return n_; }
  Elem neutral() const { return neutral_; }
  Elem op(Elem a, Elem b) const { return table_[std::size_t(a) * n_ + b]; }
  const std::vector<Elem>& table() const { return table_; }

  std::string name_of(Elem e) const {
    if (e < element_names.size()) return element_names[e];
    return std::to_string(int(e));
  }

  bool same_structure(const FiniteMonoid& other) const {
    return n_ == other.n_ && neutral_ == other.neutral_ && table_ == other.table_;
  }

  friend Result<FiniteMonoid, MonoidError> validate_monoid(
      const std::vector<std::vector<int>>& op_table, int neutral, std::string label);

 private:
  std::size_t n_ = 0;
  Elem neutral_ = 0;
  std::vector<Elem> table_;
};

// Checks associativity, commutativity and neutrality exhaustively and
// returns either the validated monoid or the first violated axiom with
// witness elements.
inline Result<FiniteMonoid, MonoidError> validate_monoid(
    const std::vector<std::vector<int>>& op_table, int neutral, std::string label = "") {
  using R = Result<FiniteMonoid, MonoidError>;
  const std::size_t n = op_table.size();
  if (n == 0 || n > 255) return R::fail({MonoidError::Kind::TooLarge});
  for (const auto& row : op_table) {
    if (row.size() != n) return R::fail({MonoidError::Kind::BadShape});
    for (int v : row)
      if (v < 0 || std::size_t(v) >= n) return R::fail({MonoidError::Kind::BadShape});
  }
  if (neutral < 0 || std::size_t(neutral) >= n) return R::fail({MonoidError::Kind::BadShape});

  auto op = [&](int a, int b) { return op_table[a][b]; };
  for (std::size_t a = 0; a < n; ++a)
    if (op(neutral, int(a)) != int(a) || op(int(a), neutral) != int(a))
      return R::fail({MonoidError::Kind::NeutralViolated, int(a)});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (op(int(a), int(b)) != op(int(b), int(a)))
        return R::fail({MonoidError::Kind::NotCommutative, int(a), int(b)});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (op(op(int(a), int(b)), int(c)) != op(int(a), op(int(b), int(c))))
          return R::fail({MonoidError::Kind::NotAssociative, int(a), int(b), int(c)});

  FiniteMonoid m;
  m.n_ = n;
  m.neutral_ = Elem(neutral);
  m.label = std::move(label);
  m.table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) m.table_[a * n + b] = Elem(op_table[a][b]);
  return R::ok(std::move(m));
}

// A monoid homomorphism stored as its value table. Source and target are
// non-owning references; the built-in monoids are process-lifetime
// constants and user monoids must outlive their homs.
struct Hom {
  const FiniteMonoid* source = nullptr;
  const FiniteMonoid* target = nullptr;
  std::vector<Elem> values;

  Elem operator()(Elem x) const { return values[x]; }

  bool is_identity() const {
    if (source != target && !(source && target && source->same_structure(*target))) return false;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i] != i) return false;
    return true;
  }
  bool is_constant_neutral() const {
    for (Elem v : values)
      if (v != target->neutral()) return false;
    return true;
  }

  friend bool operator==(const Hom& a, const Hom& b) { return a.values == b.values; }
  friend bool operator<(const Hom& a, const Hom& b) { return a.values < b.values; }
};

inline Hom identity_hom(const FiniteMonoid& m) {
  Hom h{&m, &m, {}};
  h.values.resize(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) h.values[i] = Elem(i);
  return h;
}

inline Hom constant_neutral_hom(const FiniteMonoid& src, const FiniteMonoid& tgt) {
  Hom h{&src, &tgt, std::vector<Elem>(src.size(), tgt.neutral())};
  return h;
}

inline bool is_hom(const FiniteMonoid& src, const FiniteMonoid& tgt, const std::vector<Elem>& v) {
  if (v.size() != src.size()) return false;
  if (v[src.neutral()] != tgt.neutral()) return false;
  for (std::size_t a = 0; a < src.size(); ++a)
    for (std::size_t b = 0; b < src.size(); ++b)
      if (v[src.op(Elem(a), Elem(b))] != tgt.op(v[a], v[b])) return false;
  return true;
}

// apply g first, then f
inline Hom compose(const Hom& f, const Hom& g) {
  Hom h{g.source, f.target, {}};
  h.values.resize(g.values.size());
  for (std::size_t i = 0; i < g.values.size(); ++i) h.values[i] = f.values[g.values[i]];
  return h;
}

// Exhaustive enumeration of all homomorphisms src -> tgt, in lexicographic
// order of the value tables. Brute force with early pruning: fine for the
// <= 4 element monoids this library ships, guarded against misuse.
inline std::vector<Hom> enumerate_homs(const FiniteMonoid& src, const FiniteMonoid& tgt) {
  if (src.size() > 10) throw std::invalid_argument("enumerate_homs: source monoid too large");
  const std::size_t n = src.size();
  std::vector<Hom> out;
  std::vector<Elem> v(n, 0);

  // partial consistency: every product of already-assigned elements that
  // lands on an already-assigned element must match
  auto consistent_at = [&](std::size_t k) {
    if (k == src.neutral() && v[k] != tgt.neutral()) return false;
    for (std::size_t a = 0; a <= k; ++a) {
      Elem p = src.op(Elem(a), Elem(k));
      if (p <= k && tgt.op(v[a], v[k]) != v[p]) return false;
      Elem q = src.op(Elem(k), Elem(a));
      if (q <= k && tgt.op(v[k], v[a]) != v[q]) return false;
    }
    // products of earlier elements that land on k
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a; b < k; ++b)
        if (src.op(Elem(a), Elem(b)) == Elem(k) && tgt.op(v[a], v[b]) != v[k]) return false;
    return true;
  };

  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      out.push_back(Hom{&src, &tgt, v});
      return;
    }
    for (std::size_t c = 0; c < tgt.size(); ++c) {
      v[k] = Elem(c);
      if (consistent_at(k)) self(self, k + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// Coordinatewise product monoid; pair (a,b) gets index a*|B|+b, so the
// element order matches the paper's tables when the factors are listed in
// their printed order.
inline FiniteMonoid product_monoid(const FiniteMonoid& A, const FiniteMonoid& B,
                                   std::string label = "") {
  const std::size_t na = A.size(), nb = B.size();
  std::vector<std::vector<int>> table(na * nb, std::vector<int>(na * nb));
  for (std::size_t a1 = 0; a1 < na; ++a1)
    for (std::size_t b1 = 0; b1 < nb; ++b1)
      for (std::size_t a2 = 0; a2 < na; ++a2)
        for (std::size_t b2 = 0; b2 < nb; ++b2)
          table[a1 * nb + b1][a2 * nb + b2] =
              int(A.op(Elem(a1), Elem(a2))) * int(nb) + int(B.op(Elem(b1), Elem(b2)));
  if (label.empty()) label = A.label + "x" + B.label;
  auto res = validate_monoid(table, int(A.neutral()) * int(nb) + int(B.neutral()), label);
  FiniteMonoid m = std::move(res).value();
  m.element_names.resize(na * nb);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b)
      m.element_names[a * nb + b] = "(" + A.name_of(Elem(a)) + "," + B.name_of(Elem(b)) + ")";
  return m;
}

// (f,g) acting coordinatewise on a product monoid built by product_monoid.
inline Hom product_hom(const Hom& f, const Hom& g, const FiniteMonoid& src_prod,
                       const FiniteMonoid& tgt_prod) {
  const std::size_t nb_src = g.source->size();
  const std::size_t nb_tgt = g.target->size();
  Hom h{&src_prod, &tgt_prod, {}};
  h.values.resize(src_prod.size());
  for (std::size_t a = 0; a < f.source->size(); ++a)
    for (std::size_t b = 0; b < nb_src; ++b)
      h.values[a * nb_src + b] = Elem(std::size_t(f.values[a]) * nb_tgt + g.values[b]);
  return h;
}

}  // namespace dualips
