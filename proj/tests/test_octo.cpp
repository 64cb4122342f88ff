#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "tlift/error.hpp"
#include "tlift/octo.hpp"
#include "tlift/surfaces.hpp"

using namespace tlift;
using tlift::testing::Gen;

namespace {

Octonion random_octonion(Gen& gen) { return Octonion(gen.vec(8)); }

Octonion random_unit_imaginary(Gen& gen) {
  Octonion q = random_octonion(gen);
  q(0) = 0;
  return q.normalized();
}

double assoc(const Octonion& a, const Octonion& b, const Octonion& c) {
  return (multiply(multiply(a, b), c) - multiply(a, multiply(b, c))).norm();
}

}  // namespace

TEST_SUITE("octo") {
  TEST_CASE("multiplication table") {
    const Octonion one = octonion_unit(0);
    for (int i = 1; i < 8; ++i) {
      CHECK((multiply(octonion_unit(i), octonion_unit(i)) + one).norm() == 0.0);
      CHECK((multiply(one, octonion_unit(i)) - octonion_unit(i)).norm() == 0.0);
    }
    // Quaternion subalgebra: i j = k.
    CHECK((multiply(octonion_unit(1), octonion_unit(2)) - octonion_unit(3)).norm() == 0.0);
    // Non-associativity witness.
    CHECK(assoc(octonion_unit(1), octonion_unit(2), octonion_unit(4)) > 1.0);
  }

  TEST_CASE("property: normed, alternative, and conjugation reverses products") {
    Gen gen(41);
    for (int trial = 0; trial < 50; ++trial) {
      const Octonion a = random_octonion(gen), b = random_octonion(gen);
      CHECK(multiply(a, b).norm() == doctest::Approx(a.norm() * b.norm()).epsilon(1e-12));
      CHECK(assoc(a, a, b) < 1e-12 * (1 + a.squaredNorm() * b.norm()));
      CHECK(assoc(a, b, b) < 1e-12 * (1 + b.squaredNorm() * a.norm()));
      CHECK((conjugate(multiply(a, b)) - multiply(conjugate(b), conjugate(a))).norm() < 1e-12 * (1 + a.norm() * b.norm()));
      CHECK((left_mult_matrix(a) * b - multiply(a, b)).norm() < 1e-12 * (1 + a.norm() * b.norm()));
    }
  }

  TEST_CASE("property: L_q is an orthogonal complex structure") {
    Gen gen(42);
    for (int trial = 0; trial < 30; ++trial) {
      const Mat L = left_mult_structure(random_unit_imaginary(gen));
      CHECK(max_abs(Mat(L * L + Mat::Identity(8, 8))) < 1e-12);
      CHECK(max_abs(Mat(L.transpose() + L)) < 1e-12);
    }
  }

  TEST_CASE("property: lift_point sends q1 to q2") {
    Gen gen(43);
    for (int trial = 0; trial < 30; ++trial) {
      const Octonion q1 = random_octonion(gen).normalized();
      Octonion q2 = random_octonion(gen);
      q2 = (q2 - q2.dot(q1) * q1).normalized();
      const Octonion q = lift_point(q1, q2);
      CHECK(std::abs(q(0)) < 1e-12);
      CHECK(q.norm() == doctest::Approx(1.0));
      CHECK((left_mult_structure(q) * q1 - q2).norm() < 1e-12);
    }
  }

  TEST_CASE("canonical lift of planes and the octonion torus") {
    // A quaternion line: spanned by 1 and i, lifted to q = i.
    const SurfaceFixture line = make_surface_fixture("octonion_plane", {{"a", {1, 0, 0, 0, 0, 0, 0, 0}},
                                                                         {"b", {0, 1, 0, 0, 0, 0, 0, 0}}});
    const OctonionLift ql = canonical_lift(build_immersion(line, 12));
    for (const Octonion& q : ql.q) CHECK((q - octonion_unit(1)).norm() < 1e-12);

    for (const char* kind : {"octonion_plane", "octonion_torus"}) {
      const OctonionLift lift = canonical_lift(build_immersion(make_surface_fixture(kind), 24));
      CHECK(lift.unit_imaginary_defect < 1e-12);
      CHECK(lift.lift_defect < 1e-10);
    }
  }

  TEST_CASE("errors") {
    CHECK_THROWS_WITH_AS(left_mult_structure(octonion_unit(0)), doctest::Contains("NotUnitImaginary"), Error);
    CHECK_THROWS_WITH_AS(left_mult_structure(Octonion(2.0 * octonion_unit(3))), doctest::Contains("NotUnitImaginary"),
                         Error);
    const ImmersionField r4 = build_immersion(make_surface_fixture("helicoid"), 12);
    CHECK_THROWS_WITH_AS(canonical_lift(r4), doctest::Contains("DimensionMismatch"), Error);
  }
}
