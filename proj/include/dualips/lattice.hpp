// Finite tori: site <-> coordinate codecs, wrap-around neighborhoods and
// translations. Periodic boundaries keep translation invariance exact; at
// L=2 the two directed neighbors along an axis coincide (multiset
// neighborhood), which matches the torus restriction of the double sum
// over ordered pairs.
#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

namespace dualips {

class TorusLattice {
 public:
  TorusLattice(std::vector<int> lengths) : lengths_(std::move(lengths)) {
    if (lengths_.empty()) throw std::invalid_argument("TorusLattice: dimension must be >= 1");
    site_count_ = 1;
    strides_.resize(lengths_.size());
    for (std::size_t k = 0; k < lengths_.size(); ++k) {
      if (lengths_[k] < 2) throw std::invalid_argument("TorusLattice: axis length must be >= 2");
      strides_[k] = site_count_;
      site_count_ *= lengths_[k];
    }
  }
  static TorusLattice line(int length) { return TorusLattice(std::vector<int>{length}); }

  int dim() const { return int(lengths_.size()); }
  const std::vector<int>& lengths() const { return lengths_; }
  long long site_count() const { return site_count_; }

  std::vector<int> coords(long long site) const {
    std::vector<int> c(lengths_.size());
    for (std::size_t k = 0; k < lengths_.size(); ++k) {
      c[k] = int(site % lengths_[k]);
      site /= lengths_[k];
    }
    return c;
  }
  long long site(const std::vector<int>& c) const {
    long long s = 0;
    for (std::size_t k = 0; k < lengths_.size(); ++k) {
      int v = ((c[k] % lengths_[k]) + lengths_[k]) % lengths_[k];
      s += v * strides_[k];
    }
    return s;
  }

  // neighbor along axis k in direction dir (+1 or -1), with wrap-around
  long long neighbor(long long site, int k, int dir) const {
    int v = int((site / strides_[k]) % lengths_[k]);
    int w = v + dir;
    if (w < 0) w += lengths_[k];
    if (w >= lengths_[k]) w -= lengths_[k];
    return site + (static_cast<long long>(w) - v) * strides_[k];
  }

  std::vector<long long> neighbors(long long site) const {
    std::vector<long long> out;
    out.reserve(2 * lengths_.size());
    for (int k = 0; k < dim(); ++k) {
      out.push_back(neighbor(site, k, +1));
      out.push_back(neighbor(site, k, -1));
    }
    return out;
  }

  long long translate(long long site, const std::vector<int>& shift) const {
    auto c = coords(site);
    for (std::size_t k = 0; k < lengths_.size(); ++k) c[k] += shift[k];
    return this->site(c);
  }

 private:
  std::vector<int> lengths_;
  std::vector<long long> strides_;
  long long site_count_ = 0;
};

}  // namespace dualips
