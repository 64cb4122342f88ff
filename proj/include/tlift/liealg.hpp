#pragma once

#include <array>
#include <vector>

#include "tlift/error.hpp"
#include "tlift/linalg.hpp"

namespace tlift {

/// A real matrix Lie algebra given by a basis of n x n matrices.
///
/// Elements of g (and of its complexification) are handled as coordinate
/// vectors in the fixed basis. Complex coordinates are the (real, imaginary)
/// pair of real coordinate vectors, stored as std::complex.
class LieAlgebraRep {
 public:
  LieAlgebraRep() = default;

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Mat>& basis() const { return basis_; }

  /// killing(i, j) = trace(ad b_i o ad b_j).
  const Mat& killing() const { return killing_; }

  /// ad matrix of the i-th basis element: ad_basis(i)(k, j) = c^k_{ij}.
  const Mat& ad_basis(int i) const { return ad_[static_cast<size_t>(i)]; }

  Mat element(const Vec& xi) const;
  CMat element(const CVec& xi) const;

  /// Least-squares coordinates of an ambient matrix.
  Vec coords(const Mat& x) const;
  CVec coords(const CMat& x) const;

  /// ||x - element(coords(x))||_F / max(||x||_F, 1e-300).
  double span_residual(const Mat& x) const;

  Mat ad(const Vec& xi) const;
  CMat ad(const CVec& xi) const;

  Vec bracket(const Vec& x, const Vec& y) const { return ad(x) * y; }
  CVec bracket(const CVec& x, const CVec& y) const { return ad(x) * y; }

  friend LieAlgebraRep build_algebra(std::vector<Mat> basis);

 private:
  int ambient_dim_ = 0;
  std::vector<Mat> basis_;
  Mat coord_map_;  // d x n^2, acts on row-major flattened matrices
  Mat killing_;
  std::vector<Mat> ad_;
};

/// Builds the structure constants and Killing form.
/// Throws DependentBasis or NotClosed (relative bracket residual above 1e-8).
LieAlgebraRep build_algebra(std::vector<Mat> basis);

/// Maximum violations of antisymmetry and Jacobi over all basis triples.
struct AlgebraDefects {
  double closure = 0;
  double antisymmetry = 0;
  double jacobi = 0;
  double killing = 0;  // killing() against trace(ad ad) recomputed from matrices
};
AlgebraDefects algebra_defects(const LieAlgebraRep& g);

/// Order-4 automorphism tau with the averaging projectors
/// P_k = 1/4 sum_m i^{-km} tau^m onto the i^k eigenspaces of g^C.
struct GradedAutomorphism {
  Mat tau;
  std::array<CMat, 4> projectors;  // indexed by grade_slot(k)

  const CMat& projector(int grade) const;

  /// Projectors from tau alone; throws NotOrderFour unless tau^4 = I to 1e-10.
  static GradedAutomorphism from_tau(const Mat& tau);
};

/// Slot of grade k in {0, 1, 2, -1} (3 is accepted as an alias of -1).
int grade_slot(int grade);

inline constexpr std::array<int, 4> kGrades{0, 1, 2, -1};

/// tau = coordinate matrix of X -> J X J^{-1}.
/// Throws DoesNotPreserveAlgebra or NotOrderFour.
GradedAutomorphism automorphism_from_group_element(const LieAlgebraRep& g, const Mat& J);

/// P_k xi. Throws BadGrade.
CVec grade_project(const GradedAutomorphism& aut, const CVec& xi, int grade);

struct AutomorphismDefects {
  double order_four = 0;
  double bracket = 0;
  double completeness = 0;
  double idempotence = 0;
  double orthogonality = 0;
  double eigen = 0;
  double grading = 0;
  double reality = 0;  // conj(P_1 x) vs P_{-1} x, conj(P_0 x) vs P_0 x, etc.

  double max() const;
};
AutomorphismDefects automorphism_defects(const LieAlgebraRep& g, const GradedAutomorphism& aut);

/// Complex orthonormal basis (columns) of g_k.
CMat eigenspace_basis(const GradedAutomorphism& aut, int grade);

/// g = k + p for sigma = tau^2. Bases are orthonormal coordinate columns.
struct SymmetricSplit {
  Mat k_basis;
  Mat p_basis;
  Mat sigma;

  int dim_k() const { return static_cast<int>(k_basis.cols()); }
  int dim_p() const { return static_cast<int>(p_basis.cols()); }
};

/// Throws EffectivityFailure when ad restricted to p fails to inject k
/// (smallest singular value <= 1e-8), including the degenerate p = 0 case.
SymmetricSplit symmetric_split(const LieAlgebraRep& g, const GradedAutomorphism& aut);

/// Commutator / anticommutator tests for g_0 and g_2.
struct CharacterizationReport {
  double forward = 0;   // max over an eigenspace basis of the (anti)commutator norm
  double converse = 0;  // distance of the solution space from the eigenspace
  int solution_dim = 0;
  int eigenspace_dim = 0;

  double residual() const { return forward > converse ? forward : converse; }
};

/// [ad xi|p, tau|p] = 0 characterizes g_0.
CharacterizationReport check_g0_characterization(const LieAlgebraRep& g, const SymmetricSplit& split,
                                                 const GradedAutomorphism& aut);
/// {ad xi|p, tau|p} = 0 characterizes g_2.
CharacterizationReport check_g2_characterization(const LieAlgebraRep& g, const SymmetricSplit& split,
                                                 const GradedAutomorphism& aut);

/// Commutator (sign = -1) or anticommutator (sign = +1) of ad xi with tau, restricted to p.
CMat ad_tau_product(const LieAlgebraRep& g, const SymmetricSplit& split, const Mat& tau,
                    const CVec& xi, double sign);

/// Real basis of h = g_0 intersected with g.
Mat stabilizer_subalgebra(const SymmetricSplit& split, const GradedAutomorphism& aut);

/// Scaling-and-squaring Taylor exponential; the series is truncated once a term
/// drops below tol relative to the partial sum. exp(0) = I exactly.
/// Throws NonFinite.
Mat matrix_exp(const Mat& x, double tol = 1e-16);

}  // namespace tlift
