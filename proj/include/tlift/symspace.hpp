#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "tlift/fixtures.hpp"
#include "tlift/liealg.hpp"

namespace tlift {

enum class ModelKind { Euclidean, Sphere, Complex };

/// Target model space N. Points and tangent vectors use ambient coordinates:
/// R^dim for euclidean and complex kinds, R^5 for the 4-sphere of radius r.
struct ModelSpace {
  ModelKind kind = ModelKind::Euclidean;
  int dim = 4;
  double radius = 1.0;
  double curvature = 0.0;  // c: 0 for flat kinds, 1/r^2 for the sphere
  int ambient_dim = 4;
  std::optional<Mat> kahler;  // J^N, complex kind only

  static ModelSpace euclidean(int dim = 4);
  static ModelSpace sphere4(double radius = 1.0);
  /// C^2 with J^N(x1, y1, x2, y2) = (-y1, x1, -y2, x2).
  static ModelSpace complex2();

  std::string name() const;  // "euclidean4", "euclidean8", "sphere4", "complex2"
  bool flat() const { return curvature == 0.0; }
};

/// Accepts the names produced by ModelSpace::name(). Throws ParseError.
ModelSpace parse_model_space(std::string_view name, double radius = 1.0);

/// Space-form curvature R(X, Y) = c (X Y^T - Y X^T) as a matrix, so that
/// R(X, Y) Z = c (<Y, Z> X - <X, Z> Y). Throws DimensionMismatch.
Mat curvature_operator(const ModelSpace& space, const Vec& X, const Vec& Y);

/// Identification of T_o N (o = last ambient basis vector) with p: a tangent
/// vector x corresponds to the element X of p with X o = x.
struct TangentModel {
  int dim = 0;
  Mat to_algebra;  // d x dim
  Mat evaluate;    // dim x d, xi -> first dim entries of element(xi) o
};

/// Throws DimensionMismatch when dim p differs from ambient_dim - 1.
TangentModel tangent_model(const AlgebraFixture& fx, const SymmetricSplit& split);

/// Operator on T_o N induced by an operator on algebra coordinates.
Mat restrict_to_tangent(const TangentModel& tm, const Mat& op);

/// -ad[X, Y] restricted to p, in tangent coordinates.
Mat curvature_operator_algebraic(const LieAlgebraRep& g, const TangentModel& tm, const Vec& X, const Vec& Y);

/// max(||j^2 + I||, ||j^T G + G j||) in operator norm.
double twistor_membership(const Mat& j, const Mat& metric);
double twistor_membership(const Mat& j);

using CurvatureFn = std::function<Mat(const Vec&, const Vec&)>;

/// ||R(jX, jY) - j R(X, Y) j^{-1}|| with j^{-1} = j^T. Throws DimensionMismatch.
double curvature_commutation_residual(const ModelSpace& space, const Mat& j, const Vec& X, const Vec& Y);
double curvature_commutation_residual(const CurvatureFn& R, const Mat& j, const Vec& X, const Vec& Y);

/// tau = Ad(diag(j, 1)) for j in SO(4) with j^2 = -I acting on T_o N.
/// Throws NotLiftable or DimensionMismatch.
GradedAutomorphism four_symmetric_from_j(const AlgebraFixture& fx, const Mat& j_on_p);

/// Algebra fixture realizing the isometry group of a 4-dimensional model space.
/// Throws DimensionMismatch for spaces without one.
std::string algebra_fixture_for(const ModelSpace& space);

}  // namespace tlift
