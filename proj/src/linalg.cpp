#include "tlift/linalg.hpp"

#include <algorithm>

namespace tlift {

namespace {

template <typename M>
M range_impl(const M& m, double tol) {
  if (m.size() == 0) return M(m.rows(), 0);
  Eigen::JacobiSVD<M> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double cut = tol * std::max(1.0, s.size() ? s(0) : 0.0);
  int rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  return svd.matrixU().leftCols(rank);
}

template <typename M>
M null_impl(const M& m, double tol) {
  if (m.cols() == 0) return M(0, 0);
  if (m.rows() == 0) return M::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<M> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = tol * std::max(1.0, s.size() ? s(0) : 0.0);
  int rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

}  // namespace

Mat orthonormal_range(const Mat& m, double tol) { return range_impl(m, tol); }
CMat orthonormal_range(const CMat& m, double tol) { return range_impl(m, tol); }
Mat null_space(const Mat& m, double tol) { return null_impl(m, tol); }
CMat null_space(const CMat& m, double tol) { return null_impl(m, tol); }

double op_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

double op_norm(const CMat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues()(0);
}

Vec flatten_row_major(const Mat& m) {
  Vec v(m.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) v(r * m.cols() + c) = m(r, c);
  return v;
}

Mat unflatten_row_major(const Vec& v, int n) {
  Mat m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = v(r * n + c);
  return m;
}

}  // namespace tlift
