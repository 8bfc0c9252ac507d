// A configuration assigns a monoid element to every torus site. On a
// finite torus every configuration is finite, so the finite-support
// subspace coincides with the full space; the pairing below is the full
// product over all sites.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dualips/duality.hpp"
#include "dualips/lattice.hpp"
#include "dualips/monoid.hpp"

namespace dualips {

struct Configuration {
  const TorusLattice* lattice = nullptr;
  const FiniteMonoid* monoid = nullptr;
  std::vector<Elem> values;

  static Configuration all_neutral(const TorusLattice& lat, const FiniteMonoid& mon) {
    return Configuration{&lat, &mon, std::vector<Elem>(std::size_t(lat.site_count()), mon.neutral())};
  }

  Elem operator()(long long site) const { return values[std::size_t(site)]; }
  Elem& operator[](long long site) { return values[std::size_t(site)]; }

  bool is_all_neutral() const {
    for (Elem v : values)
      if (v != monoid->neutral()) return false;
    return true;
  }
  long long occupied_count() const {
    long long n = 0;
    for (Elem v : values) n += (v != monoid->neutral());
    return n;
  }

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.values == b.values;
  }
  friend bool operator!=(const Configuration& a, const Configuration& b) { return !(a == b); }
};

// Sitewise pairing product: Psi(x,y) = prod_i psi(x(i), y(i)) in T.
inline Elem pairing_value(const DualityWitness& w, const Configuration& x,
                          const Configuration& y) {
  if (x.values.size() != y.values.size())
    throw std::invalid_argument("pairing_value: mismatched lattices");
  Elem acc = w.T->neutral();
  for (std::size_t i = 0; i < x.values.size(); ++i)
    acc = w.T->op(acc, w(x.values[i], y.values[i]));
  return acc;
}

// Embedded numeric value of the pairing, for expectations; requires the
// target monoid to carry a scalar embedding.
inline long long pairing_numeric(const DualityWitness& w, const Configuration& x,
                                 const Configuration& y) {
  if (!w.T->embedding)
    throw std::invalid_argument("pairing_numeric: target monoid has no scalar embedding");
  return (*w.T->embedding)[pairing_value(w, x, y)];
}

}  // namespace dualips
