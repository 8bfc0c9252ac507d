// Strong lumpability of the exact generator under a sitewise projection:
// all members of a block must send the same aggregate rate into every
// other block. A pass certifies that the projected process is Markov with
// the induced generator.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dualips/exact/generator.hpp"

namespace dualips {

struct LumpabilityReport {
  bool lumpable = false;
  std::size_t blocks = 0;
  std::string detail;  // first violation, when any
};

// `project` maps a state index to its block index; `block_count` bounds it.
inline LumpabilityReport lumpability_check(const SparseGenerator& gen,
                                           const std::function<std::uint64_t(std::uint64_t)>& project,
                                           std::uint64_t block_count, double tol = 1e-12) {
  const std::uint64_t n = gen.state_count();
  std::vector<std::uint64_t> block_of(n);
  for (std::uint64_t s = 0; s < n; ++s) block_of[s] = project(s);

  LumpabilityReport rep;
  rep.blocks = block_count;

  // reference aggregate row per block, keyed by the first member seen
  std::vector<std::vector<double>> reference(block_count);
  std::vector<std::uint64_t> ref_state(block_count, ~std::uint64_t(0));
  std::vector<double> agg(block_count);

  for (std::uint64_t s = 0; s < n; ++s) {
    std::fill(agg.begin(), agg.end(), 0.0);
    gen.for_row(s, [&](std::uint32_t col, double rate) {
      if (block_of[col] != block_of[s]) agg[block_of[col]] += rate;
    });
    std::uint64_t blk = block_of[s];
    if (ref_state[blk] == ~std::uint64_t(0)) {
      ref_state[blk] = s;
      reference[blk] = agg;
      continue;
    }
    for (std::uint64_t bp = 0; bp < block_count; ++bp) {
      if (bp == blk) continue;
      if (std::fabs(agg[bp] - reference[blk][bp]) > tol) {
        rep.lumpable = false;
        rep.detail = "states " + std::to_string(ref_state[blk]) + " and " + std::to_string(s) +
                     " in block " + std::to_string(blk) + " disagree on rate into block " +
                     std::to_string(bp);
        return rep;
      }
    }
  }
  rep.lumpable = true;
  return rep;
}

// convenience: sitewise element projection between codecs
inline std::function<std::uint64_t(std::uint64_t)> sitewise_projection(
    const StateCodec& fine, const StateCodec& coarse, const std::function<Elem(Elem)>& site_map) {
  return [&fine, &coarse, site_map](std::uint64_t s) {
    Configuration x = fine.decode(s);
    Configuration y = Configuration::all_neutral(coarse.lattice(), coarse.monoid());
    for (std::size_t i = 0; i < x.values.size(); ++i) y.values[i] = site_map(x.values[i]);
    return coarse.encode(y);
  };
}

}  // namespace dualips
