#pragma once

#include <string>

#include "tlift/grid.hpp"
#include "tlift/report.hpp"
#include "tlift/surfaces.hpp"
#include "tlift/symspace.hpp"

namespace tlift {

/// Grid-sampled conformal immersion with adapted frames.
///
/// Derivatives of phi are centered differences. `tangent` holds (e1, e2) with
/// e1 along d/du and e2 from Gram-Schmidt of d/dv; `normal` holds the normal
/// frame, oriented so that (e1, e2, n1, ..., [phi/r]) is positive. `chart` is
/// the upper triangular A with (d/du, d/dv) = (e1, e2) A.
struct ImmersionField {
  std::string name;
  SurfaceGrid grid;
  ModelSpace space;
  double scale = 1.0;
  Field<Vec> phi;
  Field<Vec> phi_u, phi_v;
  Field<Vec> phi_uu, phi_uv, phi_vv;
  Field<double> conformal_factor;  // |d/du phi|^2
  Field<Mat> tangent;              // ambient x 2
  Field<Mat> normal;               // ambient x codim
  Field<Eigen::Matrix2d> chart;
  double conformality_defect = 0;  // analytic chart, relative to the conformal factor
  bool frame_discontinuity = false;  // some frame column moves by more than 1 between neighbours

  int codim() const { return space.dim - 2; }
};

/// Samples a fixture. Throws NotConformal (defect above tol_conf), BranchPoint
/// (conformal factor below 1e-10), NotImmersed or DimensionMismatch.
ImmersionField build_immersion(const SurfaceFixture& fx, const SurfaceGrid& grid, double tol_conf = 1e-6);
ImmersionField build_immersion(const SurfaceFixture& fx, int n, double tol_conf = 1e-6);

/// Orthogonal complex structure on phi^{-1}TN in ambient coordinates (zero on
/// the sphere's radial direction).
struct TwistorField {
  SurfaceGrid grid;
  Field<Mat> j;
  int sign = 1;
};

/// j = e1 -> e2 on the tangent plane and n1 -> sign n2 on the normal plane.
/// Requires codimension 2. Throws NotImmersed or DimensionMismatch.
TwistorField twistor_lift(const ImmersionField& phi, int sign);

/// Same field with j replaced by -j (an anti-holomorphic lift).
TwistorField negated(const TwistorField& j);

/// Pointwise maxima of ||j^2 + Pi||, ||j^T + j|| and ||(I - T T^T) j e1|| where
/// Pi projects onto T_phi N.
struct TwistorInvariants {
  double square = 0;
  double skew = 0;
  double tangent_stability = 0;
  double max() const;
};
TwistorInvariants twistor_invariants(const ImmersionField& phi, const TwistorField& j);

/// |dphi(J d/du) - j dphi(d/du)| / |dphi(d/du)|.
ResidualReport twistor_holomorphicity_residual(const ImmersionField& phi, const TwistorField& j);

/// Normal-frame coefficients (II(e1,e1), II(e1,e2), II(e2,e2)) as the columns
/// of a codim x 3 matrix.
struct SecondFundamentalForm {
  SurfaceGrid grid;
  Field<Mat> coeff;
};

SecondFundamentalForm second_fundamental_form(const ImmersionField& phi);

/// Normal-frame coefficients of H = (II(e1,e1) + II(e2,e2)) / 2.
Field<Vec> mean_curvature(const SecondFundamentalForm& ii);

/// Ambient mean curvature vector.
Field<Vec> mean_curvature_vector(const ImmersionField& phi, const SecondFundamentalForm& ii);

/// II(e1, e2) from the normal part of d/du e2 against d/dv e1 (both converted to
/// frame directions).
ResidualReport ii_symmetry_residual(const ImmersionField& phi);

/// Operators A: T -> N in frame coordinates. A_- = (A + jN A jT)/2 anti-commutes
/// with j and A_+ = (A - jN A jT)/2 commutes.
std::pair<Mat, Mat> split_operator(const Mat& A, const Mat& jT, const Mat& jN);

/// Per-point II(e_a, .) split for a = 1, 2: (plus, minus) pairs.
struct SplitII {
  Field<Mat> plus_e1, minus_e1, plus_e2, minus_e2;
};
SplitII split_II(const ImmersionField& phi, const SecondFundamentalForm& ii, const TwistorField& j);

/// Frame connection coefficients along d/du and d/dv: omega (2 x 2, tangent)
/// and eta (codim x codim, normal), both skew.
struct FrameConnection {
  Field<Mat> omega_u, omega_v, eta_u, eta_v;
};
FrameConnection frame_connection(const ImmersionField& phi);

/// Intermediate fields for the differential checks, per point:
/// div_ii = *d*II and div_ii_minus = *d*II_- (codim x 2, column a is the value on e_a);
/// grad_h = (nabla_{e1} H, nabla_{e2} H); jT, jN restricted structures.
struct HarmonicityData {
  Field<Mat> div_ii, div_ii_minus, grad_h, jT, jN;
};
HarmonicityData harmonicity_data(const ImmersionField& phi, const TwistorField& j);

ResidualReport vertical_harmonicity_residual(const ImmersionField& phi, const TwistorField& j);
ResidualReport codazzi_identity_residual(const ImmersionField& phi);
ResidualReport holomorphic_H_residual(const ImmersionField& phi, const TwistorField& j);
ResidualReport theorem2_equivalence(const ImmersionField& phi, const TwistorField& j);
/// ||[R(e1, e2), j]|| with the space-form curvature; no differencing.
ResidualReport curvature_commutator_residual(const ImmersionField& phi, const TwistorField& j);
ResidualReport curvature_commutator_residual(const ImmersionField& phi, const TwistorField& j, const CurvatureFn& R);

/// |H| over the interior.
ResidualReport mean_curvature_norm(const ImmersionField& phi);

/// (sum_i R(e_i, e_a) e_i)^perp in normal-frame coordinates, column a.
Field<Mat> codazzi_curvature_term(const ImmersionField& phi);

}  // namespace tlift
