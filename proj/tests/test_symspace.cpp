#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "tlift/error.hpp"
#include "tlift/fixtures.hpp"
#include "tlift/symspace.hpp"

using namespace tlift;
using tlift::testing::Gen;

namespace {

Vec pad(const Vec& x, int n) {
  Vec out = Vec::Zero(n);
  out.head(x.size()) = x;
  return out;
}

}  // namespace

TEST_SUITE("symspace") {
  TEST_CASE("property: -ad[X, Y] on p matches the space-form curvature") {
    Gen gen(21);
    const std::pair<const char*, ModelSpace> cases[] = {{"so5_s4", ModelSpace::sphere4(1.0)},
                                                       {"se4_r4", ModelSpace::euclidean(4)}};
    for (const auto& [name, space] : cases) {
      const AlgebraFixture fx = make_algebra_fixture(name);
      const TangentModel tm = tangent_model(fx, symmetric_split(fx.algebra, fx.aut));
      REQUIRE(tm.dim == 4);
      for (int trial = 0; trial < 20; ++trial) {
        const Vec X = gen.vec(4), Y = gen.vec(4);
        const Mat alg = curvature_operator_algebraic(fx.algebra, tm, X, Y);
        const Mat model = curvature_operator(space, pad(X, space.ambient_dim), pad(Y, space.ambient_dim));
        CHECK(max_abs(alg - model.topLeftCorner(4, 4)) < 1e-10);
      }
    }
  }

  TEST_CASE("curvature of the round sphere scales with 1/r^2") {
    const ModelSpace s = ModelSpace::sphere4(2.0);
    CHECK(s.curvature == doctest::Approx(0.25));
    Vec x = Vec::Zero(5), y = Vec::Zero(5), z = Vec::Zero(5);
    x(0) = 1;
    y(1) = 1;
    z(1) = 1;
    // R(X, Y) Y = c (<Y, Y> X - <X, Y> Y) = c X.
    CHECK(((curvature_operator(s, x, y) * z) - 0.25 * x).norm() < 1e-15);
  }

  TEST_CASE("property: twistor membership of random complex structures") {
    Gen gen(22);
    for (int trial = 0; trial < 30; ++trial) {
      const int orient = trial % 2 ? 1 : -1;
      const Mat j = gen.complex_structure(4, orient);
      CHECK(twistor_membership(j) < 1e-10);
      CHECK(twistor_membership(Mat(1.1 * j)) > 1e-2);
      CHECK(twistor_membership(gen.rotation(4)) > 1e-2);
    }
  }

  TEST_CASE("property: space-form curvature commutes with every complex structure") {
    Gen gen(23);
    // Negative control: a curvature-like tensor with no isotropy.
    const Vec d = (Vec(4) << 1, 2, 3, 4).finished();
    const CurvatureFn skewed = [&](const Vec& a, const Vec& b) {
      return Mat(d.asDiagonal() * (a * b.transpose() - b * a.transpose()) * d.asDiagonal());
    };
    double worst = 0, control = 0;
    for (int trial = 0; trial < 30; ++trial) {
      const Mat j = gen.complex_structure(4, trial % 2 ? 1 : -1);
      const Vec X = gen.vec(4), Y = gen.vec(4);
      worst = std::max(worst, curvature_commutation_residual(ModelSpace::euclidean(4), j, X, Y));
      const ModelSpace s = ModelSpace::sphere4(gen.uniform(0.5, 3.0));
      worst = std::max(worst, curvature_commutation_residual(
                                  [&](const Vec& a, const Vec& b) { return curvature_operator(s, a, b); }, j, X, Y));
      control = std::max(control, curvature_commutation_residual(skewed, j, X, Y));
    }
    CHECK(worst < 1e-12);
    CHECK(control > 1e-1);
  }

  TEST_CASE("property: four-symmetric structures from complex structures on p") {
    Gen gen(24);
    for (const char* name : {"so5_s4", "se4_r4"}) {
      const AlgebraFixture fx = make_algebra_fixture(name);
      for (int trial = 0; trial < 6; ++trial) {
        const Mat j = gen.complex_structure(4, trial % 2 ? 1 : -1);
        const GradedAutomorphism aut = four_symmetric_from_j(fx, j);
        CHECK(automorphism_defects(fx.algebra, aut).max() < 1e-10);
        CHECK(max_abs(aut.tau * aut.tau * aut.tau * aut.tau - Mat::Identity(10, 10)) < 1e-10);
        const TangentModel tm = tangent_model(fx, symmetric_split(fx.algebra, aut));
        CHECK(max_abs(restrict_to_tangent(tm, aut.tau) - j) < 1e-10);
      }
    }
  }

  TEST_CASE("errors") {
    Gen gen(25);
    const AlgebraFixture so5 = make_algebra_fixture("so5_s4");
    CHECK_THROWS_WITH_AS(four_symmetric_from_j(so5, gen.rotation(4)), doctest::Contains("NotLiftable"), Error);
    CHECK_THROWS_WITH_AS(four_symmetric_from_j(so5, gen.complex_structure(6)), doctest::Contains("DimensionMismatch"),
                         Error);
    CHECK_THROWS_WITH_AS(parse_model_space("hyperbolic4"), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(ModelSpace::sphere4(-1.0), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(curvature_operator(ModelSpace::euclidean(4), gen.vec(3), gen.vec(3)),
                         doctest::Contains("DimensionMismatch"), Error);
    CHECK_THROWS_WITH_AS(algebra_fixture_for(ModelSpace::euclidean(8)), doctest::Contains("DimensionMismatch"), Error);
    CHECK(algebra_fixture_for(ModelSpace::sphere4()) == "so5_s4");
    for (const char* n : {"euclidean4", "euclidean8", "sphere4", "complex2"}) CHECK(parse_model_space(n).name() == n);
  }
}
