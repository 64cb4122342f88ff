#include "tlift/symspace.hpp"

#include <cmath>

namespace tlift {

ModelSpace ModelSpace::euclidean(int dim) {
  ModelSpace s;
  s.kind = ModelKind::Euclidean;
  s.dim = dim;
  s.ambient_dim = dim;
  return s;
}

ModelSpace ModelSpace::sphere4(double radius) {
  if (!(radius > 0)) throw Error(ErrorCode::ParseError, "sphere radius must be positive");
  ModelSpace s;
  s.kind = ModelKind::Sphere;
  s.dim = 4;
  s.radius = radius;
  s.curvature = 1.0 / (radius * radius);
  s.ambient_dim = 5;
  return s;
}

ModelSpace ModelSpace::complex2() {
  ModelSpace s;
  s.kind = ModelKind::Complex;
  s.dim = 4;
  s.ambient_dim = 4;
  s.kahler = standard_complex_structure(4);
  return s;
}

std::string ModelSpace::name() const {
  switch (kind) {
    case ModelKind::Euclidean: return "euclidean" + std::to_string(dim);
    case ModelKind::Sphere: return "sphere4";
    case ModelKind::Complex: return "complex2";
  }
  return "?";
}

ModelSpace parse_model_space(std::string_view name, double radius) {
  if (name == "euclidean4") return ModelSpace::euclidean(4);
  if (name == "euclidean8") return ModelSpace::euclidean(8);
  if (name == "sphere4") return ModelSpace::sphere4(radius);
  if (name == "complex2") return ModelSpace::complex2();
  throw Error(ErrorCode::ParseError, "unknown model space '" + std::string(name) + "'");
}

Mat curvature_operator(const ModelSpace& space, const Vec& X, const Vec& Y) {
  if (X.size() != Y.size() || (X.size() != space.ambient_dim && X.size() != space.dim))
    throw Error(ErrorCode::DimensionMismatch, "tangent vectors do not match the model space");
  return space.curvature * (X * Y.transpose() - Y * X.transpose());
}

TangentModel tangent_model(const AlgebraFixture& fx, const SymmetricSplit& split) {
  const LieAlgebraRep& g = fx.algebra;
  const int n = g.ambient_dim();
  const int m = n - 1;
  if (split.dim_p() != m)
    throw Error(ErrorCode::DimensionMismatch, fx.name + ": dim p differs from the tangent dimension");
  TangentModel tm;
  tm.dim = m;
  tm.evaluate.resize(m, g.dim());
  for (int i = 0; i < g.dim(); ++i) tm.evaluate.col(i) = g.basis()[static_cast<size_t>(i)].col(n - 1).head(m);
  const Mat on_p = tm.evaluate * split.p_basis;
  Eigen::JacobiSVD<Mat> svd(on_p, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues().minCoeff() <= 1e-8)
    throw Error(ErrorCode::DimensionMismatch, fx.name + ": p does not move the base point");
  tm.to_algebra = split.p_basis * on_p.inverse();
  return tm;
}

Mat restrict_to_tangent(const TangentModel& tm, const Mat& op) { return tm.evaluate * op * tm.to_algebra; }

Mat curvature_operator_algebraic(const LieAlgebraRep& g, const TangentModel& tm, const Vec& X, const Vec& Y) {
  if (X.size() != tm.dim || Y.size() != tm.dim)
    throw Error(ErrorCode::DimensionMismatch, "tangent vectors do not match the tangent model");
  const Vec xy = g.bracket(Vec(tm.to_algebra * X), Vec(tm.to_algebra * Y));
  return -restrict_to_tangent(tm, g.ad(xy));
}

double twistor_membership(const Mat& j, const Mat& metric) {
  const Mat id = Mat::Identity(j.rows(), j.cols());
  return std::max(op_norm(Mat(j * j + id)), op_norm(Mat(j.transpose() * metric + metric * j)));
}

double twistor_membership(const Mat& j) { return twistor_membership(j, Mat::Identity(j.rows(), j.cols())); }

double curvature_commutation_residual(const CurvatureFn& R, const Mat& j, const Vec& X, const Vec& Y) {
  if (j.rows() != X.size() || j.cols() != X.size() || X.size() != Y.size())
    throw Error(ErrorCode::DimensionMismatch, "complex structure does not match the tangent vectors");
  const Mat lhs = R(j * X, j * Y);
  const Mat rhs = j * R(X, Y) * j.transpose();
  return op_norm(Mat(lhs - rhs));
}

double curvature_commutation_residual(const ModelSpace& space, const Mat& j, const Vec& X, const Vec& Y) {
  return curvature_commutation_residual([&](const Vec& a, const Vec& b) { return curvature_operator(space, a, b); },
                                        j, X, Y);
}

GradedAutomorphism four_symmetric_from_j(const AlgebraFixture& fx, const Mat& j_on_p) {
  const int n = fx.algebra.ambient_dim();
  if (j_on_p.rows() != n - 1 || j_on_p.cols() != n - 1)
    throw Error(ErrorCode::DimensionMismatch, "j does not act on the tangent space of " + fx.name);
  const Mat id = Mat::Identity(n - 1, n - 1);
  if (max_abs(j_on_p * j_on_p + id) > 1e-10 || max_abs(j_on_p.transpose() * j_on_p - id) > 1e-10)
    throw Error(ErrorCode::NotLiftable, "j is not an orthogonal complex structure");
  Mat J = Mat::Identity(n, n);
  J.topLeftCorner(n - 1, n - 1) = j_on_p;
  GradedAutomorphism aut = automorphism_from_group_element(fx.algebra, J);

  const SymmetricSplit split = symmetric_split(fx.algebra, aut);
  const TangentModel tm = tangent_model(fx, split);
  if (max_abs(restrict_to_tangent(tm, aut.tau) - j_on_p) > 1e-10)
    throw Error(ErrorCode::NotLiftable, "Ad(J) does not restrict to j on p");
  return aut;
}

std::string algebra_fixture_for(const ModelSpace& space) {
  if (space.dim != 4) throw Error(ErrorCode::DimensionMismatch, space.name() + " has no shipped algebra fixture");
  return space.kind == ModelKind::Sphere ? "so5_s4" : "se4_r4";
}

}  // namespace tlift
