#include <doctest.h>

#include "sos/rng.hpp"
#include "sos/tensor.hpp"

using namespace sos;

namespace {

double maxabs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

TensorConfig quick() {
  TensorConfig cfg;
  cfg.restarts = 8;
  cfg.iters = 200;
  cfg.seed = 9;
  return cfg;
}

TensorElement chain_units(int n) {
  std::vector<std::pair<Mat, Mat>> f;
  for (int i = 0; i < n; ++i) {
    Mat a = Mat::Zero(n, n), b = Mat::Zero(n, n);
    a(i, 0) = 1.0;
    b(0, i) = 1.0;
    f.push_back({a, b});
  }
  return TensorElement(GradedDim::diag(n, 0), GradedDim::diag(n, 0), f, 1);
}

TensorElement random_tensor(std::uint64_t seed, int terms = 2) {
  Rng rng(seed);
  std::vector<std::pair<Mat, Mat>> f;
  for (int k = 0; k < terms; ++k)
    f.push_back({rng.ginibre(2, 2), rng.ginibre(2, 2)});
  return TensorElement(GradedDim::diag(2, 0), GradedDim::diag(2, 0), f, 1);
}

}  // namespace

TEST_CASE("kron matrix of an elementary tensor is the kronecker product") {
  Rng rng(1);
  Mat a = rng.ginibre(2, 2), b = rng.ginibre(3, 3);
  TensorElement t = TensorElement::elementary(a, b);
  CHECK(maxabs(kron_matrix(t) - kron(a, b)) < 1e-15);
  CHECK(injective_norm(t) ==
        doctest::Approx(op_norm(a) * op_norm(b)).epsilon(1e-10));
}

TEST_CASE("injective norm of the identity pair and the unit chain") {
  TensorElement one =
      TensorElement::elementary(Mat::Identity(2, 2), Mat::Identity(2, 2));
  CHECK(injective_norm(one) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(injective_norm(chain_units(2)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("factor reduction removes dependent pairs without changing the element") {
  Rng rng(2);
  Mat a = rng.ginibre(2, 2), b = rng.ginibre(2, 2), c = rng.ginibre(2, 2);
  // third factor is a multiple of the first on the left side
  TensorElement t(GradedDim::diag(2, 0), GradedDim::diag(2, 0),
                  {{a, b}, {c, b}, {2.0 * a, c}}, 1);
  TensorElement r = reduce_factors(t);
  CHECK(r.factors.size() == 2);
  CHECK(maxabs(kron_matrix(r) - kron_matrix(t)) < 1e-12);
}

TEST_CASE("haagerup bracket collapses on elementary tensors") {
  Rng rng(3);
  Mat a = rng.ginibre(2, 2), b = rng.ginibre(2, 2);
  NormBracket h = haagerup_norm(TensorElement::elementary(a, b), quick());
  double expect = op_norm(a) * op_norm(b);
  CHECK(h.lower == doctest::Approx(expect).epsilon(1e-8));
  CHECK(h.upper == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("haagerup bracket of unit chains is [1, 1]") {
  for (int n : {2, 3}) {
    NormBracket h = haagerup_norm(chain_units(n), quick());
    CHECK(h.lower == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(h.upper == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("haagerup bracket of the diagonal unit pair is [1, 1]") {
  Mat e11 = Mat::Zero(2, 2), e22 = Mat::Zero(2, 2);
  e11(0, 0) = 1.0;
  e22(1, 1) = 1.0;
  TensorElement t(GradedDim::diag(2, 0), GradedDim::diag(2, 0),
                  {{e11, e11}, {e22, e22}}, 1);
  NormBracket h = haagerup_norm(t, quick());
  CHECK(h.lower == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(h.upper == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("haagerup upper witness re-evaluates to its bound") {
  TensorElement t = random_tensor(4);
  NormBracket h = haagerup_norm(t, quick());
  CHECK(std::abs(haagerup_objective(h.upper_witness) - h.upper) < 1e-9);
  CHECK(h.lower <= h.upper + 1e-12);
}

TEST_CASE("star maps are antilinear involutions") {
  GradedDim g = GradedDim::diag(1, 1);
  Rng rng(5);
  TensorElement t(g, g, {{rng.ginibre(2, 2), rng.ginibre(2, 2)}}, 1);
  for (StarMode mode :
       {StarMode::Product, StarMode::HaagerupFlip, StarMode::AdjointSpace}) {
    TensorElement tt = star_tensor(star_tensor(t, mode), mode);
    CHECK(maxabs(tt.factors[0].first - t.factors[0].first) < 1e-15);
    CHECK(maxabs(tt.factors[0].second - t.factors[0].second) < 1e-15);
  }
  // product mode on an elementary tensor stars both factors
  TensorElement ts = star_tensor(t, StarMode::Product);
  Mat eps = g.epsilon();
  CHECK(maxabs(ts.factors[0].first -
               eps * t.factors[0].first.adjoint() * eps) < 1e-15);
}

TEST_CASE("product star preserves the injective norm") {
  GradedDim g = GradedDim::diag(1, 1);
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(40 + s);
    TensorElement t(g, g,
                    {{rng.ginibre(2, 2), rng.ginibre(2, 2)},
                     {rng.ginibre(2, 2), rng.ginibre(2, 2)}},
                    1);
    CHECK(std::abs(injective_norm(star_tensor(t, StarMode::Product)) -
                   injective_norm(t)) < 1e-12);
  }
}

TEST_CASE("flip involutes agree after witness transport") {
  for (std::uint64_t s = 0; s < 3; ++s) {
    TensorElement t = random_tensor(50 + s);
    auto [h1, h2] = haagerup_with_flip(t, quick());
    CHECK(std::abs(h1.upper - h2.upper) < 1e-6);
    CHECK(std::abs(h1.lower - h2.lower) < 1e-10);
  }
}

TEST_CASE("norm ordering holds with a seeded haagerup run") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    TensorElement t = random_tensor(60 + s);
    NormBracket p = projective_norm(t, quick());
    NormBracket h =
        haagerup_norm(t, quick(), {haagerup_seed_from_projective(p)});
    CHECK(injective_norm(t) <= h.upper + 1e-8);
    CHECK(h.lower <= h.upper + 1e-12);
    CHECK(h.upper <= p.upper + 1e-8);
  }
}

TEST_CASE("symmetrized bracket dominates the plain one") {
  TensorElement t = random_tensor(70);
  NormBracket h = haagerup_norm(t, quick());
  NormBracket hs = symmetrized_haagerup(t, quick());
  CHECK(hs.upper >= h.upper - 1e-9);
  CHECK(hs.lower >= h.lower - 1e-9);
}

TEST_CASE("dual bracket sits between the spatial floor and the haagerup roof") {
  TensorElement t = random_tensor(80);
  NormBracket h = haagerup_norm(t, quick());
  NormBracket d = dual_symmetrized_haagerup(t, quick(), 6);
  CHECK(d.lower <= d.upper + 1e-12);
  CHECK(d.lower >= injective_norm(t) - 1e-9);
  CHECK(d.upper <= h.upper + 1e-9);
  CHECK(d.method == "heuristic-dual-lower");
}

TEST_CASE("dual bracket contains the expected value on exact instances") {
  TensorElement one =
      TensorElement::elementary(Mat::Identity(2, 2), Mat::Identity(2, 2));
  NormBracket d = dual_symmetrized_haagerup(one, quick(), 6);
  CHECK(d.lower <= 1.0 + 1e-9);
  CHECK(d.upper >= 1.0 - 1e-9);
}

TEST_CASE("positivity transfers through the kronecker representation") {
  GradedDim d11 = GradedDim::diag(1, 1), d20 = GradedDim::diag(2, 0);
  // trivially graded identity sits in both cones
  TensorElement triv =
      TensorElement::elementary(Mat::Identity(2, 2), Mat::Identity(2, 2));
  CHECK(finite_dim_cstar_tensor(triv, PositivityCheck::EpsPositive));
  CHECK(finite_dim_cstar_tensor(triv, PositivityCheck::Superpositive));
  // nontrivial product grading: the identity is superpositive but eps is not
  // PSD, so it leaves the eps-positive cone
  TensorElement one = TensorElement::elementary(d11, d11, Mat::Identity(2, 2),
                                                Mat::Identity(2, 2));
  CHECK(!finite_dim_cstar_tensor(one, PositivityCheck::EpsPositive));
  CHECK(finite_dim_cstar_tensor(one, PositivityCheck::Superpositive));
  Mat cm(2, 2);
  cm << 1, 1, -1, -1;
  TensorElement mixed =
      TensorElement::elementary(d11, d20, cm, Mat::Identity(2, 2));
  CHECK(finite_dim_cstar_tensor(mixed, PositivityCheck::EpsPositive));
  CHECK(!finite_dim_cstar_tensor(mixed, PositivityCheck::Superpositive));
}

TEST_CASE("tensor construction and budgets validate their input") {
  CHECK_THROWS_AS(TensorElement(GradedDim::diag(2, 0), GradedDim::diag(2, 0),
                                {{Mat::Zero(3, 3), Mat::Zero(2, 2)}}, 1),
                  InputError);
  TensorConfig tiny;
  tiny.restarts = 2;
  tiny.iters = 50;
  CHECK_THROWS_AS(haagerup_norm(random_tensor(90), tiny), InputError);
}
