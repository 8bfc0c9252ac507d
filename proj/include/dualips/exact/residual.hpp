// Expectation-level duality: |E^x[Psi(X_t,y)] - E^y[Psi(x,Y_t)]| from two
// independent transient solves (forward family and its dual), plus the
// interpolation E[Psi(X_s, Y_{t-s})] on an s-grid, which must be constant.
#pragma once

#include <cmath>
#include <vector>

#include "dualips/configuration.hpp"
#include "dualips/exact/transient.hpp"
#include "dualips/family.hpp"

namespace dualips {

struct ResidualReport {
  double forward_value = 0;  // E^x[Psi(X_t, y)]
  double dual_value = 0;     // E^y[Psi(x, Y_t)]
  double residual = 0;
  double max_interpolation_deviation = 0;  // over the s-grid, vs forward_value
};

inline ResidualReport duality_residual(const Configuration& x, const Configuration& y,
                                       const RatedFamily& f, const DualityWitness& w, double t,
                                       double eps = 1e-10, int grid_points = 5,
                                       std::uint64_t state_cap = StateCodec::kDefaultCap) {
  StateCodec codec_s(*f.lattice, *f.monoid, state_cap);
  auto dual = dualize_family(f, w);
  if (!dual) throw std::invalid_argument("duality_residual: " + dual.error().message());
  StateCodec codec_r(*f.lattice, *w.R, state_cap);

  SparseGenerator gen_fwd(f, codec_s);
  SparseGenerator gen_dual(*dual, codec_r);

  const std::uint64_t ns = codec_s.state_count();
  const std::uint64_t nr = codec_r.state_count();
  if (ns > (std::uint64_t(1) << 12) || nr > (std::uint64_t(1) << 12))
    throw std::length_error("duality_residual: state space too large for the dense pairing");

  // numeric pairing matrix over full state spaces (small lattices only)
  std::vector<std::vector<double>> psi_num(ns, std::vector<double>(nr));
  for (std::uint64_t a = 0; a < ns; ++a) {
    Configuration xa = codec_s.decode(a);
    for (std::uint64_t b = 0; b < nr; ++b)
      psi_num[a][b] = double(pairing_numeric(w, xa, codec_r.decode(b)));
  }

  const std::uint64_t sx = codec_s.encode(x);
  const std::uint64_t sy = codec_r.encode(y);

  ResidualReport rep;
  auto mu_t = transient(DistributionVector::point_mass(ns, sx), gen_fwd, t, eps);
  for (std::uint64_t a = 0; a < ns; ++a)
    rep.forward_value += mu_t.probabilities[a] * psi_num[a][sy];
  auto nu_t = transient(DistributionVector::point_mass(nr, sy), gen_dual, t, eps);
  for (std::uint64_t b = 0; b < nr; ++b)
    rep.dual_value += nu_t.probabilities[b] * psi_num[sx][b];
  rep.residual = std::fabs(rep.forward_value - rep.dual_value);

  for (int gi = 1; gi + 1 <= grid_points; ++gi) {
    double s = t * double(gi) / double(grid_points + 1);
    auto mu_s = transient(DistributionVector::point_mass(ns, sx), gen_fwd, s, eps);
    auto nu_rest = transient(DistributionVector::point_mass(nr, sy), gen_dual, t - s, eps);
    double e = 0;
    for (std::uint64_t a = 0; a < ns; ++a) {
      if (mu_s.probabilities[a] == 0.0) continue;
      double inner = 0;
      for (std::uint64_t b = 0; b < nr; ++b) inner += nu_rest.probabilities[b] * psi_num[a][b];
      e += mu_s.probabilities[a] * inner;
    }
    rep.max_interpolation_deviation =
        std::max(rep.max_interpolation_deviation, std::fabs(e - rep.forward_value));
  }
  return rep;
}

}  // namespace dualips
