#pragma once

#include "tlift/fixtures.hpp"
#include "tlift/forms.hpp"
#include "tlift/immersion.hpp"

namespace tlift {

/// Per-point group elements in the matrix group of `algebra`.
struct FrameField {
  SurfaceGrid grid;
  Field<Mat> g;
  LieAlgebraRep algebra;
  GradedAutomorphism aut;
};

/// Norms of alpha_1^{0,1}.
ResidualReport residual_2a(const LieValuedOneForm& alpha, const GradedAutomorphism& aut);

/// Norms of d alpha_2^{1,0} + [alpha_0 ^ alpha_2^{1,0}].
ResidualReport residual_2b(const LieAlgebraRep& g, const LieValuedOneForm& alpha, const GradedAutomorphism& aut);

/// Norms of d alpha + (1/2)[alpha ^ alpha].
ResidualReport residual_2c(const LieAlgebraRep& g, const LieValuedOneForm& alpha);

struct SystemResiduals {
  ResidualReport r2a, r2b, r2c;
};
SystemResiduals system_residuals(const LieAlgebraRep& g, const LieValuedOneForm& alpha, const GradedAutomorphism& aut);

/// Coordinates of g^{-1} dg with centered differences of the sampled frame.
LieValuedOneForm maurer_cartan_form(const LieAlgebraRep& g, const SurfaceGrid& grid, const Field<Mat>& frame);

struct Development {
  FrameField frame;
  double plaquette_defect = 0;  // max ||E_u E_v' - E_v E_u'|| over cells
  double holonomy_defect = 0;   // max return error along periodic directions; 0 otherwise
  bool curvature_warning = false;  // curvature residual above 1e-3 * scale
};

/// Develops the real part of alpha from g0 at grid point (i0, j0): first along
/// v through column i0, then along u through every row, with midpoint steps
/// g_next = g exp(h (a_i + a_next) / 2). Throws NonFinite.
Development develop_frame(const LieAlgebraRep& g, const LieValuedOneForm& alpha, int i0, int j0, const Mat& g0,
                          double scale = 1.0);

/// alpha -> Ad(h^{-1}) alpha + h^{-1} dh. Throws NotInH when Ad(h) fails to
/// commute with tau beyond 1e-8, GridMismatch on shape mismatch.
LieValuedOneForm gauge_transform(const LieAlgebraRep& g, const GradedAutomorphism& aut, const LieValuedOneForm& alpha,
                                 const Field<Mat>& h);

/// Coordinate matrix of Ad(x) on the algebra basis.
Mat adjoint_matrix(const LieAlgebraRep& g, const Mat& x);

struct GeometricFrame {
  FrameField frame;
  LieValuedOneForm alpha;
};

/// Frames g with g(o, J_ref) = (phi, j): for R^4 the homogeneous matrix
/// [[F, phi], [0, 1]], for S^4 the rotation [F | phi/r]; F carries the
/// reference frame (x1, J_ref x1, x2, J_ref x2) to (e1, j e1, n1, j n1).
/// Throws NotImmersed, FrameDiscontinuity, NotLiftable or DimensionMismatch.
GeometricFrame frame_from_geometry(const ImmersionField& phi, const TwistorField& j, const AlgebraFixture& fx);

}  // namespace tlift
