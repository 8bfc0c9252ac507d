// Configuration <-> state-index codec, mixed-radix little-endian in the
// site index. Fixed and documented: golden fixtures depend on it.
#pragma once

#include <cstdint>
#include <stdexcept>

#include "dualips/configuration.hpp"

namespace dualips {

class StateCodec {
 public:
  static constexpr std::uint64_t kDefaultCap = std::uint64_t(1) << 20;

  StateCodec(const TorusLattice& lat, const FiniteMonoid& mon, std::uint64_t cap = kDefaultCap)
      : lat_(&lat), mon_(&mon) {
    std::uint64_t count = 1;
    for (long long i = 0; i < lat.site_count(); ++i) {
      if (count > cap / mon.size() + 1) throw std::length_error("StateCodec: StateSpaceTooLarge");
      count *= mon.size();
      if (count > cap) throw std::length_error("StateCodec: StateSpaceTooLarge");
    }
    count_ = count;
  }

  std::uint64_t state_count() const { return count_; }
  const TorusLattice& lattice() const { return *lat_; }
  const FiniteMonoid& monoid() const { return *mon_; }

  std::uint64_t encode(const Configuration& x) const {
    std::uint64_t idx = 0;
    std::uint64_t radix = 1;
    for (Elem v : x.values) {
      idx += radix * v;
      radix *= mon_->size();
    }
    return idx;
  }

  Configuration decode(std::uint64_t idx) const {
    Configuration x = Configuration::all_neutral(*lat_, *mon_);
    for (auto& v : x.values) {
      v = Elem(idx % mon_->size());
      idx /= mon_->size();
    }
    return x;
  }

 private:
  const TorusLattice* lat_;
  const FiniteMonoid* mon_;
  std::uint64_t count_ = 0;
};

}  // namespace dualips
