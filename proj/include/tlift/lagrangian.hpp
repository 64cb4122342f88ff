#pragma once

#include "tlift/immersion.hpp"

namespace tlift {

/// |omega(d/du phi, d/dv phi)| / |d/du phi|^2 with omega(X, Y) = <J^N X, Y>.
/// Throws NotKahler.
ResidualReport lagrangian_residual(const ImmersionField& phi);

struct Lemma4Report {
  double anticommutator_sup = 0;  // sup ||{j, J^N}||
  double lagrangian_sup = 0;
  bool vanish_together = false;  // both <= 1e-8
  bool large_together = false;   // both >= 1e-3
  bool consistent() const { return vanish_together || large_together; }
};
/// j_+ takes values in {j : {j, J^N} = 0} exactly when phi is Lagrangian.
Lemma4Report lemma4_check(const ImmersionField& phi, const TwistorField& j_plus);

/// beta = iota_H omega: beta(X) = omega(H, dphi X), as chart coefficients
/// (beta_u, beta_v). The defect compares against -<H, J^N dphi X>.
struct MaslovForm {
  SurfaceGrid grid;
  Field<double> beta_u, beta_v;
  double closed_form_defect = 0;
};

/// Throws NotKahler or NotLagrangian (residual above tol).
MaslovForm maslov_form(const ImmersionField& phi, double tol = 1e-6);

/// sup over e_a of ||II_-(e_a, .) + beta(e_a) J^N|_T|| (operators T -> N in frame
/// coordinates, operator norm). Throws NotLagrangian.
ResidualReport maslov_identity_residual(const ImmersionField& phi, const TwistorField& j_plus, double tol = 1e-6);

/// d*beta = (d/du beta_u + d/dv beta_v) / |d/du phi|^2. Throws NotLagrangian.
ResidualReport hamiltonian_stationary_residual(const ImmersionField& phi, double tol = 1e-6);

}  // namespace tlift
