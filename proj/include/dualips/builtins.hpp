// Built-in monoids, pairings and representations: the two single-bit
// monoids (max and xor), their product U, the sign monoid {1,-1,0} under
// multiplication, the ordered sub-monoid of U, the lumped 3-state monoid,
// and the pairing tables psi1, psi2, psi_add, psi_canc, psi, psi_bar and
// psi23 together with the scalar maps gamma1, gamma2.
#pragma once

#include <stdexcept>
#include <string>

#include "dualips/duality.hpp"
#include "dualips/monoid.hpp"
#include "dualips/representation.hpp"

namespace dualips {

// Witnesses and homs point into the monoid members of the same struct, so
// instances must never be moved; use the builtins() singleton.
struct Builtins {
  Builtins();
  Builtins(const Builtins&) = delete;
  Builtins& operator=(const Builtins&) = delete;

  FiniteMonoid trivial;
  FiniteMonoid t_or;   // ({0,1}, max)
  FiniteMonoid t_xor;  // ({0,1}, addition mod 2)
  FiniteMonoid u;      // product of the two, elements (0,0),(0,1),(1,0),(1,1)
  FiniteMonoid m;      // ({1,-1,0}, multiplication), neutral first
  FiniteMonoid b01;    // ({1,0}, multiplication)
  FiniteMonoid u_bar;  // {(0,0),(0,1),(1,?)}: U with (1,0) and (1,1) merged
  FiniteMonoid m6;     // sub-monoid {(0,0),(1,0),(1,1)} of U

  Hom gamma1;      // t_or  -> m : 0 -> 1, 1 -> 0
  Hom gamma2;      // t_xor -> m : 0 -> 1, 1 -> -1
  Hom gamma1_b01;  // t_or  -> b01, same values
  Hom one_or;      // t_or  -> m : constant 1
  Hom one_xor;     // t_xor -> m : constant 1

  DualityWitness psi1;      // (t_or , t_or , t_or ): min table
  DualityWitness psi2;      // (t_xor, t_xor, t_xor): min table
  DualityWitness psi_add;   // (t_or , t_or , b01 ): gamma1 of psi1
  DualityWitness psi_canc;  // (t_xor, t_xor, m   ): gamma2 of psi2
  DualityWitness psi;       // (u, u, m): the 4x4 pairing
  DualityWitness psi_bar;   // (m6, u_bar, m): the lumped 3x3 pairing
  DualityWitness psi23;     // (u, u, u): componentwise (psi1, psi2)

  Representation gamma_pair;  // u -> Z^2, (gamma1, gamma2) pointwise

  // lumping map U -> u_bar, sitewise: (0,0)->(0,0), (0,1)->(0,1), (1,*)->(1,?)
  Elem forget(Elem v) const { return v >= 2 ? Elem(2) : v; }
};

namespace detail {

inline FiniteMonoid make_monoid(const std::vector<std::vector<int>>& table, int neutral,
                                std::string label, std::vector<std::string> names,
                                std::vector<long long> embedding = {}) {
  auto res = validate_monoid(table, neutral, std::move(label));
  if (!res) throw std::logic_error("builtin monoid failed validation: " + res.error().message());
  FiniteMonoid m = std::move(res).value();
  m.element_names = std::move(names);
  if (!embedding.empty()) m.embedding = std::move(embedding);
  return m;
}

inline DualityWitness make_witness(const FiniteMonoid& S, const FiniteMonoid& R,
                                   const FiniteMonoid& T, std::vector<Elem> psi,
                                   std::string label) {
  auto res = verify_duality(S, R, T, psi, std::move(label));
  if (!res) throw std::logic_error("builtin witness failed verification: " + res.error().message());
  return std::move(res).value();
}

}  // namespace detail

inline Builtins::Builtins() {
  Builtins& b = *this;
  using detail::make_monoid;
  using detail::make_witness;
  b.trivial = make_monoid({{0}}, 0, "trivial", {"0"});
  b.t_or = make_monoid({{0, 1}, {1, 1}}, 0, "T_or", {"0", "1"});
  b.t_xor = make_monoid({{0, 1}, {1, 0}}, 0, "T_xor", {"0", "1"});
  b.u = product_monoid(b.t_or, b.t_xor, "U");
  b.m = make_monoid({{0, 1, 2}, {1, 0, 2}, {2, 2, 2}}, 0, "M", {"1", "-1", "0"}, {1, -1, 0});
  b.b01 = make_monoid({{0, 1}, {1, 1}}, 0, "B01", {"1", "0"}, {1, 0});
  b.u_bar = make_monoid({{0, 1, 2}, {1, 0, 2}, {2, 2, 2}}, 0, "U_bar",
                        {"(0,0)", "(0,1)", "(1,?)"}, {1, -1, 0});
  b.m6 = make_monoid({{0, 1, 2}, {1, 1, 2}, {2, 2, 1}}, 0, "M6", {"(0,0)", "(1,0)", "(1,1)"});

  b.gamma1 = Hom{&b.t_or, &b.m, {0, 2}};
  b.gamma2 = Hom{&b.t_xor, &b.m, {0, 1}};
  b.gamma1_b01 = Hom{&b.t_or, &b.b01, {0, 1}};
  b.one_or = Hom{&b.t_or, &b.m, {0, 0}};
  b.one_xor = Hom{&b.t_xor, &b.m, {0, 0}};

  // value tables follow the printed matrices; entries below are element
  // indices of the target monoid
  b.psi1 = make_witness(b.t_or, b.t_or, b.t_or, {0, 0, 0, 1}, "psi1");
  b.psi2 = make_witness(b.t_xor, b.t_xor, b.t_xor, {0, 0, 0, 1}, "psi2");
  b.psi_add = make_witness(b.t_or, b.t_or, b.b01, {0, 0, 0, 1}, "psi_add");
  b.psi_canc = make_witness(b.t_xor, b.t_xor, b.m, {0, 0, 0, 1}, "psi_canc");
  b.psi = make_witness(b.u, b.u, b.m,
                       {0, 0, 0, 0,   //  1  1  1  1
                        0, 1, 0, 1,   //  1 -1  1 -1
                        0, 0, 2, 2,   //  1  1  0  0
                        0, 1, 2, 2},  //  1 -1  0  0
                       "psi");
  b.psi_bar = make_witness(b.m6, b.u_bar, b.m,
                           {0, 0, 0,   //  1  1  1
                            0, 0, 2,   //  1  1  0
                            0, 1, 2},  //  1 -1  0
                           "psi_bar");

  std::vector<Elem> psi23(16);
  for (Elem x = 0; x < 4; ++x)
    for (Elem y = 0; y < 4; ++y) {
      Elem a = b.psi1(Elem(x >> 1), Elem(y >> 1));
      Elem c = b.psi2(Elem(x & 1), Elem(y & 1));
      psi23[std::size_t(x) * 4 + y] = Elem(2 * a + c);
    }
  b.psi23 = make_witness(b.u, b.u, b.u, psi23, "psi23");

  b.gamma_pair.source = &b.u;
  b.gamma_pair.dim = 2;
  b.gamma_pair.vectors = {{1, 1}, {1, -1}, {0, 1}, {0, -1}};
  b.gamma_pair.unit = {1, 1};
  b.gamma_pair.product = Representation::Product::Pointwise;
  b.gamma_pair.faithful = true;
  if (!verify_representation(b.gamma_pair))
    throw std::logic_error("builtin gamma_pair representation inconsistent");
}

inline const Builtins& builtins() {
  static const Builtins b;
  return b;
}

inline const FiniteMonoid* find_builtin_monoid(const std::string& label) {
  const Builtins& b = builtins();
  for (const FiniteMonoid* m : {&b.trivial, &b.t_or, &b.t_xor, &b.u, &b.m, &b.b01, &b.u_bar, &b.m6})
    if (m->label == label) return m;
  return nullptr;
}

inline const DualityWitness* find_builtin_witness(const std::string& label) {
  const Builtins& b = builtins();
  for (const DualityWitness* w :
       {&b.psi1, &b.psi2, &b.psi_add, &b.psi_canc, &b.psi, &b.psi_bar, &b.psi23})
    if (w->label == label) return w;
  return nullptr;
}

}  // namespace dualips
