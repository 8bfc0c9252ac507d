#include <catch2/catch_amalgamated.hpp>

#include "dualips/builtins.hpp"
#include "dualips/representation.hpp"

using namespace dualips;

TEST_CASE("indicator representation of M: one-hot, faithful, unit at neutral") {
  const Builtins& b = builtins();
  Representation r = indicator_representation(b.m);
  CHECK(r.dim == 3);
  CHECK(r.unit == std::vector<Int>{1, 0, 0});  // neutral element is index 0
  CHECK(verify_representation(r));
  CHECK(r.faithful);
  CHECK(check_affine_independence(r.vectors));
}

TEST_CASE("indicator representation respects the convolution product") {
  const Builtins& b = builtins();
  Representation r = indicator_representation(b.u);
  for (Elem a = 0; a < 4; ++a)
    for (Elem c = 0; c < 4; ++c)
      CHECK(r.multiply(r.vectors[a], r.vectors[c]) == r.vectors[b.u.op(a, c)]);
}

TEST_CASE("affine independence: simplex vertices are independent") {
  CHECK(check_affine_independence(std::vector<std::vector<Int>>{{1, 0}, {0, 1}, {0, 0}}));
}

TEST_CASE("affine independence: {1,-1,0} on the line is dependent") {
  // oracle: lambda = (1,1,-2) sums to zero and annihilates
  std::vector<std::vector<Int>> v = {{1}, {-1}, {0}};
  long long combo = 1 * v[0][0] + 1 * v[1][0] - 2 * v[2][0];
  REQUIRE(combo == 0);
  CHECK(!check_affine_independence(v));
}

TEST_CASE("gamma(U) in the plane is affinely dependent (4 points)") {
  const Builtins& b = builtins();
  CHECK(verify_representation(b.gamma_pair));
  CHECK(b.gamma_pair.faithful);
  CHECK(!check_affine_independence(b.gamma_pair.vectors));
}

TEST_CASE("floating-point affine independence agrees on integer input") {
  std::vector<std::vector<double>> v = {{1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}};
  CHECK(check_affine_independence(v));
  std::vector<std::vector<double>> w = {{1.0}, {-1.0}, {0.0}};
  CHECK(!check_affine_independence(w));
}

TEST_CASE("gamma1 and gamma2 are multiplicative") {
  const Builtins& b = builtins();
  const auto& emb = *b.m.embedding;
  for (Elem x = 0; x < 2; ++x)
    for (Elem y = 0; y < 2; ++y) {
      CHECK(emb[b.gamma1(b.t_or.op(x, y))] == emb[b.gamma1(x)] * emb[b.gamma1(y)]);
      CHECK(emb[b.gamma2(b.t_xor.op(x, y))] == emb[b.gamma2(x)] * emb[b.gamma2(y)]);
    }
}
