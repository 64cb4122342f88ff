#pragma once

#include <cmath>
#include <random>

#include "tlift/linalg.hpp"
#include "tlift/liealg.hpp"

namespace tlift::testing {

/// Seeded generators for property tests. Every test constructs its own Gen so
/// failures replay from the seed alone.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double normal() { return n01_(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Vec vec(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

  Vec unit(int n) { return vec(n).normalized(); }

  Mat mat(int r, int c) {
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = normal();
    return m;
  }

  Mat skew(int n) {
    const Mat a = mat(n, n);
    return a - a.transpose();
  }

  /// Haar-ish rotation: exp of a random skew matrix, det +1.
  Mat rotation(int n) { return matrix_exp(0.7 * skew(n)); }

  /// Random orthogonal complex structure on R^n (n even) with the given orientation sign.
  Mat complex_structure(int n, int orientation = 1) {
    Mat j0 = Mat::Zero(n, n);
    for (int k = 0; k + 1 < n; k += 2) {
      j0(k + 1, k) = 1.0;
      j0(k, k + 1) = -1.0;
    }
    if (orientation < 0) {
      j0(n - 1, n - 2) = -1.0;
      j0(n - 2, n - 1) = 1.0;
    }
    const Mat q = rotation(n);
    return q * j0 * q.transpose();
  }

  Vec element_coords(const LieAlgebraRep& g) { return vec(g.dim()); }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> n01_;
};

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

}  // namespace tlift::testing
