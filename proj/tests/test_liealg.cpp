#include <array>
#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "tlift/error.hpp"
#include "tlift/fixtures.hpp"
#include "tlift/liealg.hpp"

using namespace tlift;
using tlift::testing::Gen;

namespace {

// trace(ad X ad Y) straight from matrix brackets, with coordinates read off by
// the Frobenius inner product against the orthonormal basis.
Mat brute_force_killing(const LieAlgebraRep& g) {
  const int d = g.dim();
  const auto& b = g.basis();
  const auto coords = [&](const Mat& x) {
    Vec c(d);
    for (int i = 0; i < d; ++i) c(i) = (b[i].array() * x.array()).sum();
    return c;
  };
  std::vector<Mat> ad(d, Mat(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) ad[i].col(j) = coords(Mat(b[i] * b[j] - b[j] * b[i]));
  Mat k(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) k(i, j) = (ad[i] * ad[j]).trace();
  return k;
}

Mat e(int n, int i, int j) {
  Mat m = Mat::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

}  // namespace

TEST_SUITE("liealg") {
  TEST_CASE("Killing form matches a brute-force trace and the so(n) closed form") {
    for (const auto& name : algebra_fixture_names()) {
      const AlgebraFixture fx = make_algebra_fixture(name);
      CHECK(max_abs(fx.algebra.killing() - brute_force_killing(fx.algebra)) < 1e-12);
    }
    // so(5): B(X, Y) = 3 tr(XY), and each unit basis element has tr(X X) = -1.
    const AlgebraFixture so5 = make_algebra_fixture("so5_s4");
    CHECK(max_abs(so5.algebra.killing() + 3.0 * Mat::Identity(10, 10)) < 1e-12);
  }

  TEST_CASE("structure constants: antisymmetry, Jacobi, closure") {
    for (const auto& name : algebra_fixture_names()) {
      const AlgebraDefects d = algebra_defects(make_algebra_fixture(name).algebra);
      CHECK(d.closure < 1e-12);
      CHECK(d.antisymmetry < 1e-12);
      CHECK(d.jacobi < 1e-12);
      CHECK(d.killing < 1e-12);
    }
  }

  TEST_CASE("eigenspace dimensions") {
    const std::array<int, 4> so5{4, 2, 2, 2}, se4{4, 2, 2, 2}, su2{1, 1, 0, 1};
    for (const auto& [name, dims] : {std::pair{"so5_s4", so5}, std::pair{"se4_r4", se4}, std::pair{"su2_order4", su2}}) {
      const AlgebraFixture fx = make_algebra_fixture(name);
      for (int k : kGrades) CHECK(eigenspace_basis(fx.aut, k).cols() == dims[grade_slot(k)]);
    }
  }

  TEST_CASE("projector algebra and grading") {
    for (const auto& name : algebra_fixture_names()) {
      const AlgebraFixture fx = make_algebra_fixture(name);
      CHECK(automorphism_defects(fx.algebra, fx.aut).max() < 1e-10);
    }
  }

  TEST_CASE("g0 and g2 characterizations and closure of h") {
    for (const std::string name : {"su2_order4", "so5_s4", "se4_r4"}) {
      const AlgebraFixture fx = make_algebra_fixture(name);
      const SymmetricSplit split = symmetric_split(fx.algebra, fx.aut);
      const CharacterizationReport c0 = check_g0_characterization(fx.algebra, split, fx.aut);
      const CharacterizationReport c2 = check_g2_characterization(fx.algebra, split, fx.aut);
      CHECK(c0.residual() < 1e-10);
      CHECK(c2.residual() < 1e-10);
      CHECK(c0.solution_dim == c0.eigenspace_dim);
      CHECK(c2.solution_dim == c2.eigenspace_dim);

      const Mat h = stabilizer_subalgebra(split, fx.aut);
      CHECK(h.cols() == c0.eigenspace_dim);
      const Mat proj = h * h.transpose();
      for (int a = 0; a < h.cols(); ++a)
        for (int b = 0; b < h.cols(); ++b) {
          const Vec br = fx.algebra.bracket(Vec(h.col(a)), Vec(h.col(b)));
          CHECK((br - proj * br).norm() < 1e-10);
        }
    }
  }

  TEST_CASE("property: tau is a Lie automorphism and brackets respect the grading") {
    Gen gen(101);
    for (const auto& name : algebra_fixture_names()) {
      const AlgebraFixture fx = make_algebra_fixture(name);
      const LieAlgebraRep& g = fx.algebra;
      for (int trial = 0; trial < 25; ++trial) {
        const Vec x = gen.element_coords(g), y = gen.element_coords(g);
        CHECK((fx.aut.tau * g.bracket(x, y) - g.bracket(Vec(fx.aut.tau * x), Vec(fx.aut.tau * y))).norm() < 1e-10);
        for (int a : kGrades)
          for (int b : kGrades) {
            const CVec xa = grade_project(fx.aut, x.cast<cplx>(), a);
            const CVec yb = grade_project(fx.aut, y.cast<cplx>(), b);
            const CVec br = g.bracket(xa, yb);
            const int sum = ((a + b) % 4 + 4) % 4;
            CHECK((br - grade_project(fx.aut, br, sum)).norm() < 1e-10);
          }
      }
    }
  }

  TEST_CASE("matrix_exp against closed forms") {
    Mat zero = Mat::Zero(5, 5);
    CHECK(matrix_exp(zero) == Mat::Identity(5, 5));

    // Strictly upper triangular: the series stops at N^3.
    Mat n = Mat::Zero(4, 4);
    n(0, 1) = 2.0;
    n(1, 2) = -1.5;
    n(2, 3) = 0.5;
    n(0, 3) = 3.0;
    const Mat series = Mat::Identity(4, 4) + n + n * n / 2.0 + n * n * n / 6.0;
    CHECK(max_abs(matrix_exp(n) - series) < 1e-14);

    const double t = 2.3;
    Mat r(2, 2);
    r << 0, -t, t, 0;
    Mat rot(2, 2);
    rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    CHECK(max_abs(matrix_exp(r) - rot) < 1e-14);
  }

  TEST_CASE("property: exp(X) exp(-X) = I and det exp(X) = exp(tr X)") {
    Gen gen(7);
    for (int trial = 0; trial < 40; ++trial) {
      const int dim = gen.integer(2, 6);
      const Mat x = gen.mat(dim, dim) * gen.uniform(0.1, 3.0);
      CHECK(max_abs(matrix_exp(x) * matrix_exp(Mat(-x)) - Mat::Identity(dim, dim)) < 1e-9 * std::exp(x.norm()));
      CHECK(std::abs(std::log(matrix_exp(x).determinant()) - x.trace()) < 1e-9 * (1 + x.norm()));
    }
  }

  TEST_CASE("fixture JSON round trip") {
    for (const auto& name : algebra_fixture_names()) {
      const AlgebraFixture fx = make_algebra_fixture(name);
      const AlgebraFixture back = parse_algebra_fixture(algebra_fixture_json(fx));
      CHECK(back.name == name);
      CHECK(max_abs(back.aut.tau - fx.aut.tau) < 1e-12);
      const AlgebraFixture shipped = load_algebra_fixture(data_dir() + "/fixtures/" + name + ".json");
      CHECK(max_abs(shipped.algebra.killing() - fx.algebra.killing()) < 1e-12);
    }
  }

  TEST_CASE("errors") {
    const Mat a = e(3, 0, 1) - e(3, 1, 0);
    const Mat b = e(3, 1, 2) - e(3, 2, 1);
    CHECK_THROWS_WITH_AS(build_algebra({a, Mat(2.0 * a)}), doctest::Contains("DependentBasis"), Error);
    CHECK_THROWS_WITH_AS(build_algebra({a, b}), doctest::Contains("NotClosed"), Error);

    const AlgebraFixture so5 = make_algebra_fixture("so5_s4");
    Mat stretch = Mat::Identity(5, 5);
    stretch(0, 0) = 2.0;
    CHECK_THROWS_WITH_AS(automorphism_from_group_element(so5.algebra, stretch), doctest::Contains("DoesNotPreserveAlgebra"),
                         Error);

    Mat third(2, 2);
    third << std::cos(2 * M_PI / 3), -std::sin(2 * M_PI / 3), std::sin(2 * M_PI / 3), std::cos(2 * M_PI / 3);
    CHECK_THROWS_WITH_AS(GradedAutomorphism::from_tau(third), doctest::Contains("NotOrderFour"), Error);

    CHECK_THROWS_WITH_AS(grade_project(so5.aut, CVec::Zero(10), 5), doctest::Contains("BadGrade"), Error);

    const GradedAutomorphism identity = GradedAutomorphism::from_tau(Mat::Identity(10, 10));
    CHECK_THROWS_WITH_AS(symmetric_split(so5.algebra, identity), doctest::Contains("EffectivityFailure"), Error);
    CHECK_THROWS_WITH_AS(make_algebra_fixture("g2_compact"), doctest::Contains("UnknownFixture"), Error);
  }
}
