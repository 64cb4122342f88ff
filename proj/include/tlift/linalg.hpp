#pragma once

#include <complex>

#include <Eigen/Dense>

namespace tlift {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

/// Orthonormal basis (as columns) of the column space of M; singular values
/// below tol * max(1, sigma_max) are treated as zero.
Mat orthonormal_range(const Mat& M, double tol = 1e-10);
CMat orthonormal_range(const CMat& M, double tol = 1e-10);

/// Orthonormal basis of the null space of M, same threshold policy.
Mat null_space(const Mat& M, double tol = 1e-10);
CMat null_space(const CMat& M, double tol = 1e-10);

/// Largest absolute entry; 0 for empty matrices.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Spectral norm (largest singular value).
double op_norm(const Mat& m);
double op_norm(const CMat& m);

/// Flatten a square matrix row-major into a vector (and back).
Vec flatten_row_major(const Mat& m);
Mat unflatten_row_major(const Vec& v, int n);

}  // namespace tlift
