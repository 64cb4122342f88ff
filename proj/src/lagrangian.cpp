#include "tlift/lagrangian.hpp"

#include <algorithm>
#include <cmath>

namespace tlift {

namespace {

const Mat& kahler_of(const ImmersionField& phi) {
  if (!phi.space.kahler) throw Error(ErrorCode::NotKahler, phi.space.name() + " carries no Kaehler structure");
  return *phi.space.kahler;
}

double omega_ratio(const Mat& J, const ImmersionField& phi, size_t k) {
  return std::abs((J * phi.phi_u[k]).dot(phi.phi_v[k])) / phi.phi_u[k].squaredNorm();
}

void require_lagrangian(const ImmersionField& phi, double tol) {
  const ResidualReport r = lagrangian_residual(phi);
  if (!(r.final_sup() <= tol))
    throw Error(ErrorCode::NotLagrangian, phi.name + " is not Lagrangian (residual " + std::to_string(r.final_sup()) + ")");
}

}  // namespace

ResidualReport lagrangian_residual(const ImmersionField& phi) {
  const Mat& J = kahler_of(phi);
  Field<double> out(phi.phi.size());
  for (size_t k = 0; k < out.size(); ++k) out[k] = omega_ratio(J, phi, k);
  return measure("lagrangian", phi.grid, out);
}

Lemma4Report lemma4_check(const ImmersionField& phi, const TwistorField& j_plus) {
  const Mat& J = kahler_of(phi);
  Lemma4Report r;
  Field<double> anti(phi.phi.size());
  for (size_t k = 0; k < anti.size(); ++k) anti[k] = op_norm(Mat(j_plus.j[k] * J + J * j_plus.j[k]));
  r.anticommutator_sup = measure("anticommutator", phi.grid, anti).final_sup();
  r.lagrangian_sup = lagrangian_residual(phi).final_sup();
  r.vanish_together = r.anticommutator_sup <= 1e-8 && r.lagrangian_sup <= 1e-8;
  r.large_together = r.anticommutator_sup >= 1e-3 && r.lagrangian_sup >= 1e-3;
  return r;
}

MaslovForm maslov_form(const ImmersionField& phi, double tol) {
  const Mat& J = kahler_of(phi);
  require_lagrangian(phi, tol);
  const Field<Vec> H = mean_curvature_vector(phi, second_fundamental_form(phi));
  MaslovForm b;
  b.grid = phi.grid;
  b.beta_u.resize(H.size());
  b.beta_v.resize(H.size());
  for (size_t k = 0; k < H.size(); ++k) {
    const Vec jh = J * H[k];
    b.beta_u[k] = jh.dot(phi.phi_u[k]);
    b.beta_v[k] = jh.dot(phi.phi_v[k]);
    const double cu = -H[k].dot(J * phi.phi_u[k]);
    const double cv = -H[k].dot(J * phi.phi_v[k]);
    b.closed_form_defect = std::max({b.closed_form_defect, std::abs(cu - b.beta_u[k]), std::abs(cv - b.beta_v[k])});
  }
  return b;
}

ResidualReport maslov_identity_residual(const ImmersionField& phi, const TwistorField& j_plus, double tol) {
  const Mat& J = kahler_of(phi);
  const MaslovForm beta = maslov_form(phi, tol);
  const SplitII split = split_II(phi, second_fundamental_form(phi), j_plus);
  Field<double> out(phi.phi.size());
  for (size_t k = 0; k < out.size(); ++k) {
    const Mat& T = phi.tangent[k];
    const Mat jn_on_t = phi.normal[k].transpose() * J * T;
    const Eigen::Matrix2d& A = phi.chart[k];
    const double b1 = beta.beta_u[k] / A(0, 0);
    const double b2 = (beta.beta_v[k] - (A(0, 1) / A(0, 0)) * beta.beta_u[k]) / A(1, 1);
    out[k] = std::max(op_norm(Mat(split.minus_e1[k] + b1 * jn_on_t)), op_norm(Mat(split.minus_e2[k] + b2 * jn_on_t)));
  }
  return measure("maslov_identity", phi.grid, out);
}

ResidualReport hamiltonian_stationary_residual(const ImmersionField& phi, double tol) {
  const MaslovForm beta = maslov_form(phi, tol);
  const Field<double> du = diff_u(phi.grid, beta.beta_u);
  const Field<double> dv = diff_v(phi.grid, beta.beta_v);
  Field<double> out(du.size());
  for (size_t k = 0; k < out.size(); ++k) out[k] = std::abs(du[k] + dv[k]) / phi.conformal_factor[k];
  return measure("hamiltonian_stationary", phi.grid, out);
}

}  // namespace tlift
