#include <doctest.h>

#include "sos/group.hpp"
#include "sos/rng.hpp"

using namespace sos;

namespace {

TensorConfig quick() {
  TensorConfig cfg;
  cfg.restarts = 8;
  cfg.iters = 200;
  cfg.seed = 11;
  return cfg;
}

CyclicGroupElement two_ones(bool flip) {
  Vec c(2);
  c << Cx(1, 0), Cx(flip ? -1 : 1, 0);
  return CyclicGroupElement(2, c);
}

}  // namespace

TEST_CASE("regular representation lists the characters") {
  std::vector<Mat> r1 = regular_rep(1);
  REQUIRE(r1.size() == 1);
  CHECK(std::abs(r1[0](0, 0) - Cx(1, 0)) < 1e-15);

  std::vector<Mat> r2 = regular_rep(2);
  CHECK(std::abs(r2[1](1, 1) - Cx(-1, 0)) < 1e-15);

  std::vector<Mat> r3 = regular_rep(3);
  Cx zeta = std::polar(1.0, 2.0 * kPi / 3.0);
  CHECK(std::abs(r3[1](1, 1) - zeta) < 1e-14);
  CHECK(std::abs(r3[1](2, 2) - zeta * zeta) < 1e-14);
  for (const Mat& u : r3)
    CHECK((u * u.adjoint() - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() <
          1e-14);
}

TEST_CASE("two-point transforms peak at two") {
  CHECK(dft_max(two_ones(false)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(dft_max(two_ones(true)) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("order-one norms equal the diagonal operator norm") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    int n = 2 + int(s % 3);
    Rng rng(100 + s);
    Vec c(n);
    for (int g = 0; g < n; ++g) c(g) = rng.cgaussian();
    CyclicGroupElement ce(n, c);
    NormBracket b = delta_k_norm(ce, 1, DeltaMode::Haagerup, quick());
    CHECK(std::abs(b.upper - op_norm(delta_k_matrix(ce, 1))) < 1e-10);
    CHECK(b.lower == b.upper);
  }
}

TEST_CASE("generators keep norm one at every tensor power") {
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k <= 3; ++k)
      for (DeltaMode mode : {DeltaMode::Haagerup, DeltaMode::Projective}) {
        NormBracket b =
            delta_k_norm(CyclicGroupElement::generator(n, 1), k, mode, quick());
        CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-6));
      }
}

TEST_CASE("diagonal norms are nondecreasing in the power") {
  CyclicGroupElement c = two_ones(false);
  double n1 = delta_k_norm(c, 1, DeltaMode::Haagerup, quick()).lower;
  NormBracket n2 = delta_k_norm(c, 2, DeltaMode::Haagerup, quick());
  NormBracket n3 = delta_k_norm(c, 3, DeltaMode::Haagerup, quick());
  CHECK(n1 <= n2.upper + 1e-9);
  CHECK(n2.lower <= n3.upper + 1e-9);
}

TEST_CASE("haagerup stays below projective on diagonal elements") {
  Rng rng(7);
  Vec c(3);
  for (int g = 0; g < 3; ++g) c(g) = rng.cgaussian();
  CyclicGroupElement ce(3, c);
  for (int k : {2, 3}) {
    NormBracket h = delta_k_norm(ce, k, DeltaMode::Haagerup, quick());
    NormBracket p = delta_k_norm(ce, k, DeltaMode::Projective, quick());
    CHECK(h.lower <= h.upper + 1e-12);
    CHECK(h.lower == doctest::Approx(p.lower).epsilon(1e-12));
    // both upper bounds dominate the common spatial certificate
    CHECK(p.upper >= h.lower - 1e-9);
  }
}

TEST_CASE("the dual involution permutes and conjugates coefficients") {
  Vec c(3);
  c << Cx(1, 2), Cx(3, -1), Cx(0, 5);
  CyclicGroupElement ci = dual_involute(CyclicGroupElement(3, c));
  CHECK(std::abs(ci.coeffs(0) - Cx(1, -2)) < 1e-15);
  CHECK(std::abs(ci.coeffs(1) - Cx(0, -5)) < 1e-15);
  CHECK(std::abs(ci.coeffs(2) - Cx(3, 1)) < 1e-15);

  CyclicGroupElement gen = CyclicGroupElement::generator(4, 1);
  CHECK(std::abs(dual_involute(gen).coeffs(3) - Cx(1, 0)) < 1e-15);
}

TEST_CASE("the dual involution is an isometry") {
  Rng rng(8);
  for (int k : {1, 2, 3}) {
    Vec c(3);
    for (int g = 0; g < 3; ++g) c(g) = rng.cgaussian();
    CHECK(dual_involution_check(CyclicGroupElement(3, c), k, quick(), 1e-5));
  }
  // a real symmetric element is a fixed point
  Vec sym(3);
  sym << Cx(1, 0), Cx(0.5, 0), Cx(0.5, 0);
  CHECK(dual_involution_check(CyclicGroupElement(3, sym), 2, quick(), 1e-5));
}

TEST_CASE("desk-scale caps are enforced") {
  CHECK_THROWS_AS(delta_k_norm(CyclicGroupElement::generator(5, 1), 2,
                               DeltaMode::Haagerup, quick()),
                  InputError);
  CHECK_THROWS_AS(delta_k_norm(CyclicGroupElement::generator(3, 1), 4,
                               DeltaMode::Haagerup, quick()),
                  InputError);
  CHECK_THROWS_AS(CyclicGroupElement(2, Vec::Zero(3)), InputError);
}
