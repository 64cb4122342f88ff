#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tlift/grid.hpp"
#include "tlift/linalg.hpp"
#include "tlift/symspace.hpp"

namespace tlift {

/// Analytic sample of a chart: position and first derivatives.
struct SurfaceSample {
  Vec phi;
  Vec phi_u;
  Vec phi_v;
};

/// A fixture surface in a conformal chart over [u0, u1] x [v0, v1]
/// (half-open and wrapped when periodic).
struct SurfaceFixture {
  std::string kind;
  ModelSpace space;
  bool periodic = false;
  double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
  std::function<SurfaceSample(double, double)> eval;
  /// Seed vectors for the normal frame; empty means standard basis vectors
  /// chosen at the chart centre.
  std::function<std::vector<Vec>(double, double)> normal_seeds;
  double scale = 1.0;

  /// n x n points over the chart domain.
  SurfaceGrid grid(int n) const;
};

/// Sorted fixture kinds; "lagrangian_graph" takes a suffix ":<poly>".
std::vector<std::string> surface_fixture_names();

/// Params (all optional): round_sphere {r}; product_torus {r1, r2};
/// perturbed_torus {eps, mode}; sphere4_latitude {r, height};
/// sphere4_torus {r, r1, r2}; octonion_plane {a, b} (8-vectors).
/// Throws UnknownFixture or ParseError.
SurfaceFixture make_surface_fixture(std::string_view kind, const nlohmann::json& params = nlohmann::json::object());

/// Separable polynomial u(x1, x2) = f(x1) + g(x2), e.g. "x1^3" or "x1^2-x2^2".
/// Coefficients are returned lowest degree first. Throws ParseError.
struct SeparablePolynomial {
  std::vector<double> f;
  std::vector<double> g;
};
SeparablePolynomial parse_separable_polynomial(std::string_view text);

}  // namespace tlift
