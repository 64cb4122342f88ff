#pragma once

#include <array>
#include <utility>
#include <vector>

#include "tlift/grid.hpp"
#include "tlift/liealg.hpp"
#include "tlift/report.hpp"

namespace tlift {

/// g^C-valued 1-form sampled on a grid: a_u = alpha(d/du), a_v = alpha(d/dv)
/// as complex coordinate vectors in the algebra basis.
struct LieValuedOneForm {
  SurfaceGrid grid;
  Field<CVec> a_u;
  Field<CVec> a_v;

  int dim() const { return a_u.empty() ? 0 : static_cast<int>(a_u.front().size()); }

  static LieValuedOneForm zero(const SurfaceGrid& grid, int dim);
  /// Real form from real coordinate samples.
  static LieValuedOneForm from_real(const SurfaceGrid& grid, const Field<Vec>& a_u, const Field<Vec>& a_v);

  LieValuedOneForm operator+(const LieValuedOneForm& o) const;
  LieValuedOneForm operator-(const LieValuedOneForm& o) const;
  LieValuedOneForm scaled(cplx s) const;
  LieValuedOneForm conjugate() const;
};

/// Value of a g^C-valued 2-form on (d/du, d/dv).
struct LieValuedTwoForm {
  SurfaceGrid grid;
  Field<CVec> value;

  LieValuedTwoForm operator+(const LieValuedTwoForm& o) const;
};

/// alpha^{1,0} = (alpha - i alpha o J^Sigma)/2: components ((a_u - i a_v)/2, (a_v + i a_u)/2).
std::pair<LieValuedOneForm, LieValuedOneForm> type_decompose(const LieValuedOneForm& alpha);

/// Grade components ordered by grade_slot: [0] = alpha_0, [1] = alpha_1, [2] = alpha_2, [3] = alpha_{-1}.
/// Throws AlgebraMismatch.
std::array<LieValuedOneForm, 4> grade_decompose(const LieValuedOneForm& alpha, const GradedAutomorphism& aut);

/// Pointwise P_k applied to both components.
LieValuedOneForm grade_component(const LieValuedOneForm& alpha, const GradedAutomorphism& aut, int grade);

/// (d alpha)(d/du, d/dv) = d/du a_v - d/dv a_u. Throws GridTooSmall.
LieValuedTwoForm exterior_derivative(const LieValuedOneForm& alpha);

/// [alpha ^ beta](d/du, d/dv) = [a_u, b_v] - [a_v, b_u]; with this normalization
/// (1/2)[alpha ^ alpha] evaluates to [a_u, a_v]. Throws GridMismatch.
LieValuedTwoForm wedge_bracket(const LieAlgebraRep& g, const LieValuedOneForm& alpha, const LieValuedOneForm& beta);

/// d alpha + (1/2)[alpha ^ alpha].
LieValuedTwoForm curvature_form(const LieAlgebraRep& g, const LieValuedOneForm& alpha);

/// Norms of a 2-form (Euclidean on complex coordinates) over the interior.
ResidualReport measure(const std::string& name, const LieValuedTwoForm& w);
ResidualReport measure(const std::string& name, const LieValuedOneForm& a);

ResidualReport curvature_residual(const LieAlgebraRep& g, const LieValuedOneForm& alpha);

/// lambda^2 a2^{1,0} + lambda a1^{1,0} + a0 + lambda^{-1} a_{-1}^{0,1} + lambda^{-2} a2^{0,1}.
/// Throws ZeroLambda.
LieValuedOneForm loop_form(const LieValuedOneForm& alpha, const GradedAutomorphism& aut, cplx lambda);

/// Eighth roots of unity at radii 1/2, 1, 2 (24 samples).
std::vector<cplx> default_lambda_samples();

/// Maximum over lambda samples of the curvature of the loop form.
ResidualReport zero_curvature_scan(const LieAlgebraRep& g, const LieValuedOneForm& alpha,
                                   const GradedAutomorphism& aut,
                                   const std::vector<cplx>& samples = default_lambda_samples());

}  // namespace tlift
