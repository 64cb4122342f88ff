#include "tlift/fixtures.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tlift {

namespace {

Mat block_j(int ambient) {
  Mat j = Mat::Identity(ambient, ambient);
  j.topLeftCorner(4, 4) = standard_complex_structure(4);
  return j;
}

}  // namespace

std::vector<std::string> algebra_fixture_names() { return {"se4_r4", "so5_s4", "su2_order4"}; }

std::vector<Mat> so_basis(int n, int ambient) {
  std::vector<Mat> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Mat e = Mat::Zero(ambient, ambient);
      e(i, j) = 1.0;
      e(j, i) = -1.0;
      out.push_back(e);
    }
  }
  return out;
}

Mat realify(const CMat& m) {
  const Eigen::Index n = m.rows();
  Mat r(2 * n, 2 * n);
  r << m.real(), -m.imag(), m.imag(), m.real();
  return r;
}

Mat standard_complex_structure(int n) {
  Mat j = Mat::Zero(n, n);
  for (int k = 0; k + 1 < n; k += 2) {
    j(k + 1, k) = 1.0;
    j(k, k + 1) = -1.0;
  }
  return j;
}

AlgebraFixture assemble_algebra_fixture(std::string name, std::vector<Mat> basis, const Mat& J) {
  for (auto& b : basis) {
    const double nb = b.norm();
    if (nb > 0) b /= nb;
  }
  AlgebraFixture fx;
  fx.name = std::move(name);
  fx.algebra = build_algebra(std::move(basis));
  fx.J = J;
  fx.aut = automorphism_from_group_element(fx.algebra, J);
  return fx;
}

AlgebraFixture make_algebra_fixture(std::string_view name) {
  if (name == "so5_s4") return assemble_algebra_fixture("so5_s4", so_basis(5, 5), block_j(5));
  if (name == "se4_r4") {
    auto basis = so_basis(4, 5);
    for (int i = 0; i < 4; ++i) {
      Mat t = Mat::Zero(5, 5);
      t(i, 4) = 1.0;
      basis.push_back(t);
    }
    return assemble_algebra_fixture("se4_r4", std::move(basis), block_j(5));
  }
  if (name == "su2_order4") {
    // i*sigma_1, i*sigma_2, i*sigma_3.
    CMat s1(2, 2), s2(2, 2), s3(2, 2);
    s1 << 0, kI, kI, 0;
    s2 << 0, 1, -1, 0;
    s3 << kI, 0, 0, -kI;
    CMat j(2, 2);
    const double q = M_PI / 4;
    j << std::polar(1.0, q), 0, 0, std::polar(1.0, -q);
    return assemble_algebra_fixture("su2_order4", {realify(s1), realify(s2), realify(s3)}, realify(j));
  }
  throw Error(ErrorCode::UnknownFixture, "no algebra fixture named '" + std::string(name) + "'");
}

AlgebraFixture parse_algebra_fixture(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  try {
    const int n = j.at("ambient_dim").get<int>();
    auto read = [n](const nlohmann::json& arr) {
      const auto vals = arr.get<std::vector<double>>();
      if (static_cast<int>(vals.size()) != n * n)
        throw Error(ErrorCode::ParseError, "matrix entry count does not match ambient_dim^2");
      return unflatten_row_major(Eigen::Map<const Vec>(vals.data(), static_cast<Eigen::Index>(vals.size())), n);
    };
    std::vector<Mat> basis;
    for (const auto& b : j.at("basis")) basis.push_back(read(b));
    return assemble_algebra_fixture(j.at("name").get<std::string>(), std::move(basis), read(j.at("J")));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

AlgebraFixture load_algebra_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::UnknownFixture, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_algebra_fixture(ss.str());
}

std::string algebra_fixture_json(const AlgebraFixture& fx) {
  nlohmann::ordered_json j;
  j["name"] = fx.name;
  j["ambient_dim"] = fx.algebra.ambient_dim();
  auto flat = [](const Mat& m) {
    const Vec v = flatten_row_major(m);
    return std::vector<double>(v.data(), v.data() + v.size());
  };
  j["basis"] = nlohmann::ordered_json::array();
  for (const auto& b : fx.algebra.basis()) j["basis"].push_back(flat(b));
  j["J"] = flat(fx.J);
  return j.dump(1);
}

std::string data_dir() {
  if (const char* env = std::getenv("TLIFT_DATA_DIR")) return env;
  return TLIFT_DATA_DIR;
}

}  // namespace tlift
