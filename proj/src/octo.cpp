#include "tlift/octo.hpp"

#include <algorithm>
#include <cmath>

namespace tlift {

namespace {

using Quaternion = Eigen::Vector4d;

Quaternion qmul(const Quaternion& a, const Quaternion& b) {
  return {a(0) * b(0) - a(1) * b(1) - a(2) * b(2) - a(3) * b(3),
          a(0) * b(1) + a(1) * b(0) + a(2) * b(3) - a(3) * b(2),
          a(0) * b(2) - a(1) * b(3) + a(2) * b(0) + a(3) * b(1),
          a(0) * b(3) + a(1) * b(2) - a(2) * b(1) + a(3) * b(0)};
}

Quaternion qconj(const Quaternion& a) { return {a(0), -a(1), -a(2), -a(3)}; }

}  // namespace

Octonion octonion_unit(int k) {
  Octonion e = Octonion::Zero();
  e(k) = 1.0;
  return e;
}

Octonion multiply(const Octonion& x, const Octonion& y) {
  const Quaternion a = x.head<4>(), b = x.tail<4>(), c = y.head<4>(), d = y.tail<4>();
  Octonion out;
  out.head<4>() = qmul(a, c) - qmul(qconj(d), b);
  out.tail<4>() = qmul(d, a) + qmul(b, qconj(c));
  return out;
}

Octonion conjugate(const Octonion& a) {
  Octonion c = -a;
  c(0) = a(0);
  return c;
}

Mat left_mult_matrix(const Octonion& a) {
  Mat m(8, 8);
  for (int k = 0; k < 8; ++k) m.col(k) = multiply(a, octonion_unit(k));
  return m;
}

Mat left_mult_structure(const Octonion& q) {
  if (std::abs(q.norm() - 1.0) > 1e-10 || std::abs(q(0)) > 1e-10)
    throw Error(ErrorCode::NotUnitImaginary, "q must be a unit imaginary octonion");
  return left_mult_matrix(q);
}

Octonion lift_point(const Octonion& q1, const Octonion& q2) { return multiply(q2, conjugate(q1)); }

OctonionLift canonical_lift(const ImmersionField& phi) {
  if (phi.space.ambient_dim != 8) throw Error(ErrorCode::DimensionMismatch, "the octonionic lift needs a surface in R^8");
  OctonionLift out;
  out.j.grid = phi.grid;
  out.j.sign = 1;
  out.q.resize(phi.phi.size());
  out.j.j.resize(phi.phi.size());
  for (size_t k = 0; k < phi.phi.size(); ++k) {
    const Octonion e1 = phi.tangent[k].col(0);
    const Octonion e2 = phi.tangent[k].col(1);
    Octonion q = lift_point(e1, e2);
    out.unit_imaginary_defect = std::max(out.unit_imaginary_defect, std::abs(q.norm() - 1.0) + std::abs(q(0)));
    q(0) = 0.0;
    q.normalize();
    out.q[k] = q;
    out.j.j[k] = left_mult_structure(q);
    out.lift_defect = std::max(out.lift_defect, (out.j.j[k] * e1 - e2).norm());
  }
  if (out.unit_imaginary_defect > 1e-8)
    throw Error(ErrorCode::LiftPropertyViolated, "q fails to be unit imaginary");
  if (out.lift_defect > 1e-8) throw Error(ErrorCode::LiftPropertyViolated, "L_q does not map e1 to e2");
  return out;
}

}  // namespace tlift
