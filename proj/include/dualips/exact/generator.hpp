// The exact rate matrix of a rated family over the full finite state
// space: off-diagonal entry (x, m(x)) accumulates r_m whenever m moves x,
// diagonal = -(row sum).
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "dualips/exact/codec.hpp"
#include "dualips/family.hpp"

namespace dualips {

class SparseGenerator {
 public:
  SparseGenerator(const RatedFamily& f, const StateCodec& codec) : codec_(&codec) {
    const std::uint64_t n = codec.state_count();
    row_start_.assign(n + 1, 0);
    std::vector<std::pair<std::uint32_t, double>> row;
    for (std::uint64_t s = 0; s < n; ++s) {
      row.clear();
      Configuration x = codec.decode(s);
      for (const auto& rm : f.maps) {
        Configuration y = rm.map.apply(x);
        std::uint64_t t = codec.encode(y);
        if (t != s) row.emplace_back(std::uint32_t(t), rm.rate);
      }
      std::sort(row.begin(), row.end());
      double out = 0;
      for (std::size_t k = 0; k < row.size();) {
        std::uint32_t col = row[k].first;
        double rate = 0;
        while (k < row.size() && row[k].first == col) rate += row[k++].second;
        cols_.push_back(col);
        rates_.push_back(rate);
        out += rate;
      }
      diag_.push_back(-out);
      row_start_[s + 1] = cols_.size();
    }
  }

  std::uint64_t state_count() const { return diag_.size(); }
  const StateCodec& codec() const { return *codec_; }
  double diagonal(std::uint64_t s) const { return diag_[s]; }

  double max_exit_rate() const {
    double m = 0;
    for (double d : diag_) m = std::max(m, -d);
    return m;
  }

  template <typename Fn>
  void for_row(std::uint64_t s, Fn&& fn) const {
    for (std::size_t k = row_start_[s]; k < row_start_[s + 1]; ++k) fn(cols_[k], rates_[k]);
  }

  // y = x * Q (left action of the generator on a row vector)
  void apply_transposed(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(x.size(), 0.0);
    for (std::uint64_t s = 0; s < state_count(); ++s) {
      const double xs = x[s];
      if (xs == 0.0) continue;
      y[s] += xs * diag_[s];
      for (std::size_t k = row_start_[s]; k < row_start_[s + 1]; ++k)
        y[cols_[k]] += xs * rates_[k];
    }
  }

  double row_sum(std::uint64_t s) const {
    double r = diag_[s];
    for (std::size_t k = row_start_[s]; k < row_start_[s + 1]; ++k) r += rates_[k];
    return r;
  }

 private:
  const StateCodec* codec_;
  std::vector<std::size_t> row_start_;
  std::vector<std::uint32_t> cols_;
  std::vector<double> rates_;
  std::vector<double> diag_;
};

}  // namespace dualips
