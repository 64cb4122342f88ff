#pragma once

#include "tlift/immersion.hpp"

namespace tlift {

/// Coordinates on (1, e1, ..., e7). Doubling of the quaternions (1, i, j, k) with
/// ij = k: (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)), e4 = (0, 1).
using Octonion = Eigen::Matrix<double, 8, 1>;

Octonion octonion_unit(int k);
Octonion multiply(const Octonion& a, const Octonion& b);
Octonion conjugate(const Octonion& a);

/// Matrix of x -> a x.
Mat left_mult_matrix(const Octonion& a);

/// L_q for q a unit imaginary octonion. Throws NotUnitImaginary (tolerance 1e-10).
Mat left_mult_structure(const Octonion& q);

/// q = q2 conj(q1) for an oriented orthonormal pair (q1, q2); L_q q1 = q2.
Octonion lift_point(const Octonion& q1, const Octonion& q2);

struct OctonionLift {
  Field<Octonion> q;
  TwistorField j;
  double unit_imaginary_defect = 0;  // max | |q| - 1 | + |<q, 1>|
  double lift_defect = 0;            // max |j e1 - e2|
};

/// Per-point q from the adapted tangent frame (e1, e2). Throws DimensionMismatch
/// unless the target is R^8, LiftPropertyViolated when j e1 != e2 beyond 1e-8.
OctonionLift canonical_lift(const ImmersionField& phi);

}  // namespace tlift
