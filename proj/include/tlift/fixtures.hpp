#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tlift/liealg.hpp"

namespace tlift {

/// A shipped algebra fixture: basis (unit Frobenius norm), the group element J
/// defining tau = Ad(J), and the derived automorphism.
struct AlgebraFixture {
  std::string name;
  LieAlgebraRep algebra;
  Mat J;
  GradedAutomorphism aut;
};

/// "su2_order4", "so5_s4", "se4_r4".
std::vector<std::string> algebra_fixture_names();

/// Builds a named fixture from code. Throws UnknownFixture.
AlgebraFixture make_algebra_fixture(std::string_view name);

/// Fixture from raw data; the basis is normalized before use.
AlgebraFixture assemble_algebra_fixture(std::string name, std::vector<Mat> basis, const Mat& J);

/// JSON schema: {name, ambient_dim, basis: [[row-major reals]], J: [row-major reals]}.
AlgebraFixture parse_algebra_fixture(const std::string& json_text);
AlgebraFixture load_algebra_fixture(const std::string& path);
std::string algebra_fixture_json(const AlgebraFixture& fx);

/// Shipped fixture directory (compile-time default, overridable by TLIFT_DATA_DIR).
std::string data_dir();

/// Elementary skew basis E_ij - E_ji (i < j, row-major order) of so(n),
/// embedded in the top-left block of ambient x ambient matrices.
std::vector<Mat> so_basis(int n, int ambient);

/// Real 2n x 2n realization [[A, -B], [B, A]] of A + iB.
Mat realify(const CMat& m);

/// Rotation by pi/2 in each consecutive coordinate pair: e_1 -> e_2, e_3 -> e_4, ...
Mat standard_complex_structure(int n);

}  // namespace tlift
