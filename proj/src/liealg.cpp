#include "tlift/liealg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tlift {

namespace {

constexpr double kClosureTol = 1e-8;
constexpr double kOrderTol = 1e-10;
constexpr double kEffectivityTol = 1e-8;

cplx ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

int grade_sum(int a, int b) {
  const int s = (((a + b) % 4) + 4) % 4;
  return s == 3 ? -1 : s;
}

CVec basis_vector(int d, int i) {
  CVec e = CVec::Zero(d);
  e(i) = 1.0;
  return e;
}

}  // namespace

LieAlgebraRep build_algebra(std::vector<Mat> basis) {
  LieAlgebraRep g;
  const int d = static_cast<int>(basis.size());
  if (d == 0) throw Error(ErrorCode::DependentBasis, "empty basis");
  const int n = static_cast<int>(basis.front().rows());
  for (const auto& b : basis) {
    if (b.rows() != n || b.cols() != n)
      throw Error(ErrorCode::DimensionMismatch, "basis matrices must be square of equal size");
    if (!b.allFinite()) throw Error(ErrorCode::NonFinite, "basis entry is not finite");
  }

  Mat stacked(n * n, d);
  for (int i = 0; i < d; ++i) stacked.col(i) = flatten_row_major(basis[static_cast<size_t>(i)]);

  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& s = svd.singularValues();
  if (s(d - 1) <= 1e-10 * s(0)) {
    std::ostringstream msg;
    msg << "smallest singular value " << s(d - 1) << " of " << d << " basis matrices";
    throw Error(ErrorCode::DependentBasis, msg.str());
  }

  g.ambient_dim_ = n;
  g.basis_ = std::move(basis);
  g.coord_map_ = svd.matrixV() * s.cwiseInverse().asDiagonal() * svd.matrixU().transpose();

  g.ad_.assign(static_cast<size_t>(d), Mat::Zero(d, d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Mat& bi = g.basis_[static_cast<size_t>(i)];
      const Mat& bj = g.basis_[static_cast<size_t>(j)];
      const Mat c = bi * bj - bj * bi;
      const Vec flat = flatten_row_major(c);
      const Vec xi = g.coord_map_ * flat;
      const double scale = std::max(bi.norm() * bj.norm(), 1e-300);
      const double resid = (flat - stacked * xi).norm() / scale;
      if (resid > kClosureTol) {
        std::ostringstream msg;
        msg << "[b" << i << ", b" << j << "] leaves the span (relative residual " << resid << ")";
        throw Error(ErrorCode::NotClosed, msg.str());
      }
      g.ad_[static_cast<size_t>(i)].col(j) = xi;
    }
  }

  g.killing_ = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      g.killing_(i, j) = (g.ad_[static_cast<size_t>(i)] * g.ad_[static_cast<size_t>(j)]).trace();
  return g;
}

Mat LieAlgebraRep::element(const Vec& xi) const {
  Mat m = Mat::Zero(ambient_dim_, ambient_dim_);
  for (int i = 0; i < dim(); ++i) m += xi(i) * basis_[static_cast<size_t>(i)];
  return m;
}

CMat LieAlgebraRep::element(const CVec& xi) const {
  CMat m = CMat::Zero(ambient_dim_, ambient_dim_);
  for (int i = 0; i < dim(); ++i) m += xi(i) * basis_[static_cast<size_t>(i)].cast<cplx>();
  return m;
}

Vec LieAlgebraRep::coords(const Mat& x) const { return coord_map_ * flatten_row_major(x); }

CVec LieAlgebraRep::coords(const CMat& x) const {
  const CVec re = coords(Mat(x.real())).cast<cplx>();
  const CVec im = coords(Mat(x.imag())).cast<cplx>();
  return re + kI * im;
}

double LieAlgebraRep::span_residual(const Mat& x) const {
  const Mat back = element(coords(x));
  return (x - back).norm() / std::max(x.norm(), 1e-300);
}

Mat LieAlgebraRep::ad(const Vec& xi) const {
  Mat a = Mat::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    if (xi(i) != 0.0) a += xi(i) * ad_[static_cast<size_t>(i)];
  return a;
}

CMat LieAlgebraRep::ad(const CVec& xi) const {
  CMat a = CMat::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    if (xi(i) != 0.0) a += xi(i) * ad_[static_cast<size_t>(i)].cast<cplx>();
  return a;
}

AlgebraDefects algebra_defects(const LieAlgebraRep& g) {
  AlgebraDefects out;
  const int d = g.dim();
  const auto& b = g.basis();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Mat c = b[i] * b[j] - b[j] * b[i];
      out.closure = std::max(out.closure, (c - g.element(g.coords(c))).norm() /
                                              std::max(b[i].norm() * b[j].norm(), 1e-300));
      out.antisymmetry = std::max(out.antisymmetry, (g.ad_basis(i).col(j) + g.ad_basis(j).col(i)).norm());
      for (int k = 0; k < d; ++k) {
        const Vec ei = Vec::Unit(d, i), ej = Vec::Unit(d, j), ek = Vec::Unit(d, k);
        const Vec jac = g.bracket(ei, g.bracket(ej, ek)) + g.bracket(ej, g.bracket(ek, ei)) +
                        g.bracket(ek, g.bracket(ei, ej));
        out.jacobi = std::max(out.jacobi, jac.norm());
      }
    }
  }
  // Killing form straight from matrix commutators: sum_k <e_k, [b_i, [b_j, b_k]]>.
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double tr = 0.0;
      for (int k = 0; k < d; ++k) {
        const Mat inner = b[j] * b[k] - b[k] * b[j];
        const Mat outer = b[i] * inner - inner * b[i];
        tr += g.coords(outer)(k);
      }
      out.killing = std::max(out.killing, std::abs(tr - g.killing()(i, j)));
    }
  }
  return out;
}

int grade_slot(int grade) {
  switch (grade) {
    case 0: return 0;
    case 1: return 1;
    case 2: return 2;
    case -1:
    case 3: return 3;
    default: throw Error(ErrorCode::BadGrade, "grade must be one of 0, 1, 2, -1");
  }
}

const CMat& GradedAutomorphism::projector(int grade) const {
  return projectors[static_cast<size_t>(grade_slot(grade))];
}

GradedAutomorphism GradedAutomorphism::from_tau(const Mat& tau) {
  if (tau.rows() != tau.cols()) throw Error(ErrorCode::DimensionMismatch, "tau must be square");
  if (!tau.allFinite()) throw Error(ErrorCode::NonFinite, "tau has non-finite entries");
  const int d = static_cast<int>(tau.rows());
  const Mat t2 = tau * tau;
  const Mat t3 = t2 * tau;
  const double order = max_abs(t3 * tau - Mat::Identity(d, d));
  if (order > kOrderTol) {
    std::ostringstream msg;
    msg << "|tau^4 - I| = " << order;
    throw Error(ErrorCode::NotOrderFour, msg.str());
  }
  GradedAutomorphism aut;
  aut.tau = tau;
  const std::array<CMat, 4> powers{CMat(Mat::Identity(d, d).cast<cplx>()), CMat(tau.cast<cplx>()),
                                   CMat(t2.cast<cplx>()), CMat(t3.cast<cplx>())};
  for (int grade : kGrades) {
    CMat p = CMat::Zero(d, d);
    for (int m = 0; m < 4; ++m) p += ipow(-grade * m) * powers[static_cast<size_t>(m)];
    aut.projectors[static_cast<size_t>(grade_slot(grade))] = 0.25 * p;
  }
  return aut;
}

GradedAutomorphism automorphism_from_group_element(const LieAlgebraRep& g, const Mat& J) {
  const int n = g.ambient_dim();
  if (J.rows() != n || J.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "J must match the ambient dimension");
  Eigen::FullPivLU<Mat> lu(J);
  if (!lu.isInvertible()) throw Error(ErrorCode::DoesNotPreserveAlgebra, "J is singular");
  const Mat Jinv = lu.inverse();
  Mat tau(g.dim(), g.dim());
  for (int i = 0; i < g.dim(); ++i) {
    const Mat conj = J * g.basis()[static_cast<size_t>(i)] * Jinv;
    const double r = g.span_residual(conj);
    if (r > kClosureTol) {
      std::ostringstream msg;
      msg << "Ad(J) b" << i << " leaves the algebra (relative residual " << r << ")";
      throw Error(ErrorCode::DoesNotPreserveAlgebra, msg.str());
    }
    tau.col(i) = g.coords(conj);
  }
  return GradedAutomorphism::from_tau(tau);
}

CVec grade_project(const GradedAutomorphism& aut, const CVec& xi, int grade) {
  return aut.projector(grade) * xi;
}

double AutomorphismDefects::max() const {
  return std::max({order_four, bracket, completeness, idempotence, orthogonality, eigen, grading, reality});
}

AutomorphismDefects automorphism_defects(const LieAlgebraRep& g, const GradedAutomorphism& aut) {
  AutomorphismDefects out;
  const int d = g.dim();
  const Mat& t = aut.tau;
  out.order_four = max_abs(t * t * t * t - Mat::Identity(d, d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Vec ei = Vec::Unit(d, i), ej = Vec::Unit(d, j);
      const Vec lhs = t * g.bracket(ei, ej);
      const Vec rhs = g.bracket(Vec(t * ei), Vec(t * ej));
      out.bracket = std::max(out.bracket, max_abs(lhs - rhs));
    }
  }
  CMat sum = CMat::Zero(d, d);
  for (int a : kGrades) {
    const CMat& pa = aut.projector(a);
    sum += pa;
    out.idempotence = std::max(out.idempotence, max_abs(pa * pa - pa));
    out.eigen = std::max(out.eigen, max_abs(t.cast<cplx>() * pa - ipow(a) * pa));
    for (int b : kGrades)
      if (a != b) out.orthogonality = std::max(out.orthogonality, max_abs(pa * aut.projector(b)));
  }
  out.completeness = max_abs(sum - CMat::Identity(d, d));

  for (int a : kGrades) {
    for (int b : kGrades) {
      const CMat& target = aut.projector(grade_sum(a, b));
      for (int i = 0; i < d; ++i) {
        const CVec x = aut.projector(a) * basis_vector(d, i);
        for (int j = 0; j < d; ++j) {
          const CVec y = aut.projector(b) * basis_vector(d, j);
          const CVec z = g.bracket(x, y);
          out.grading = std::max(out.grading, max_abs(z - target * z));
        }
      }
    }
  }

  for (int i = 0; i < d; ++i) {
    const CVec e = basis_vector(d, i);
    const CVec p1 = aut.projector(1) * e;
    const CVec pm1 = aut.projector(-1) * e;
    out.reality = std::max(out.reality, max_abs(CVec(p1.conjugate() - pm1)));
    out.reality = std::max(out.reality, max_abs(Vec((aut.projector(0) * e).imag())));
    out.reality = std::max(out.reality, max_abs(Vec((aut.projector(2) * e).imag())));
  }
  return out;
}

CMat eigenspace_basis(const GradedAutomorphism& aut, int grade) {
  return orthonormal_range(aut.projector(grade));
}

SymmetricSplit symmetric_split(const LieAlgebraRep& g, const GradedAutomorphism& aut) {
  const int d = static_cast<int>(aut.tau.rows());
  if (d != g.dim()) throw Error(ErrorCode::AlgebraMismatch, "automorphism dimension differs from algebra");
  SymmetricSplit split;
  split.sigma = aut.tau * aut.tau;
  const Mat id = Mat::Identity(d, d);
  split.k_basis = orthonormal_range(Mat(0.5 * (id + split.sigma)));
  split.p_basis = orthonormal_range(Mat(0.5 * (id - split.sigma)));

  if (split.dim_k() > 0) {
    if (split.dim_p() == 0) {
      std::ostringstream msg;
      msg << "p = 0: tau has order <= 2, ad|p kernel is all of k (dim " << split.dim_k() << ")";
      throw Error(ErrorCode::EffectivityFailure, msg.str());
    }
    Mat stacked(d * split.dim_p(), split.dim_k());
    for (int c = 0; c < split.dim_k(); ++c) {
      const Mat block = g.ad(Vec(split.k_basis.col(c))) * split.p_basis;
      stacked.col(c) = Eigen::Map<const Vec>(block.data(), block.size());
    }
    Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
    const Vec& s = svd.singularValues();
    int kernel = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) <= kEffectivityTol) ++kernel;
    kernel += static_cast<int>(stacked.cols() - s.size());
    if (kernel > 0) {
      std::ostringstream msg;
      msg << "ad|p is not injective on k: kernel dimension " << kernel;
      throw Error(ErrorCode::EffectivityFailure, msg.str());
    }
  }
  return split;
}

CMat ad_tau_product(const LieAlgebraRep& g, const SymmetricSplit& split, const Mat& tau, const CVec& xi,
                    double sign) {
  const CMat ad = g.ad(xi);
  const CMat t = tau.cast<cplx>();
  const CMat p = split.p_basis.cast<cplx>();
  return ad * t * p + sign * t * ad * p;
}

namespace {

CharacterizationReport characterize(const LieAlgebraRep& g, const SymmetricSplit& split,
                                    const GradedAutomorphism& aut, int grade, double sign) {
  CharacterizationReport rep;
  const CMat eig = eigenspace_basis(aut, grade);
  rep.eigenspace_dim = static_cast<int>(eig.cols());
  for (Eigen::Index c = 0; c < eig.cols(); ++c)
    rep.forward = std::max(rep.forward, ad_tau_product(g, split, aut.tau, eig.col(c), sign).norm());

  // Solution space inside k^C: xi = K c with the (anti)commutator vanishing.
  const int dk = split.dim_k();
  if (dk == 0) return rep;
  const CMat kb = split.k_basis.cast<cplx>();
  const Eigen::Index rows = static_cast<Eigen::Index>(g.dim()) * split.dim_p();
  CMat op(rows, dk);
  for (int c = 0; c < dk; ++c) {
    const CMat block = ad_tau_product(g, split, aut.tau, kb.col(c), sign);
    op.col(c) = Eigen::Map<const CVec>(block.data(), block.size());
  }
  const CMat kernel = kb * null_space(op, 1e-8);
  rep.solution_dim = static_cast<int>(kernel.cols());
  const CMat& proj = aut.projector(grade);
  const int d = g.dim();
  for (Eigen::Index c = 0; c < kernel.cols(); ++c)
    rep.converse = std::max(rep.converse, ((CMat::Identity(d, d) - proj) * kernel.col(c)).norm());
  if (rep.solution_dim != rep.eigenspace_dim) rep.converse = std::max(rep.converse, 1.0);
  return rep;
}

}  // namespace

CharacterizationReport check_g0_characterization(const LieAlgebraRep& g, const SymmetricSplit& split,
                                                 const GradedAutomorphism& aut) {
  return characterize(g, split, aut, 0, -1.0);
}

CharacterizationReport check_g2_characterization(const LieAlgebraRep& g, const SymmetricSplit& split,
                                                 const GradedAutomorphism& aut) {
  return characterize(g, split, aut, 2, +1.0);
}

Mat stabilizer_subalgebra(const SymmetricSplit& split, const GradedAutomorphism& aut) {
  (void)split;
  return orthonormal_range(Mat(aut.projector(0).real()));
}

Mat matrix_exp(const Mat& x, double tol) {
  if (x.rows() != x.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix_exp needs a square matrix");
  if (!x.allFinite()) throw Error(ErrorCode::NonFinite, "matrix_exp input is not finite");
  const Eigen::Index n = x.rows();
  const double norm = x.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Mat a = std::ldexp(1.0, -squarings) * x;

  Mat sum = Mat::Identity(n, n);
  Mat term = Mat::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = term * a / static_cast<double>(k);
    const double tn = term.cwiseAbs().colwise().sum().maxCoeff();
    if (tn == 0.0) break;
    sum += term;
    if (tn <= tol * sum.cwiseAbs().colwise().sum().maxCoeff()) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  if (!sum.allFinite()) throw Error(ErrorCode::NonFinite, "matrix_exp overflowed");
  return sum;
}

}  // namespace tlift
