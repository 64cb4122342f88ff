#pragma once

#include <cmath>
#include <vector>

#include "tlift/error.hpp"

namespace tlift {

/// Rectangular grid in a conformal chart z = u + iv (J^Sigma du = dv).
///
/// Point (i, j) sits at (u0 + i*hu, v0 + j*hv). Periodic directions wrap;
/// non-periodic directions use one-sided second-order stencils at the edge and
/// expose an interior mask `margin` points away from the boundary. Three points
/// keep a derivative of a derivative of frame data clear of the one-sided
/// values, which carry an O(h^2) error that two divided differences amplify to O(1).
struct SurfaceGrid {
  int nu = 0;
  int nv = 0;
  double hu = 0;
  double hv = 0;
  double u0 = 0;
  double v0 = 0;
  bool periodic_u = false;
  bool periodic_v = false;
  int margin = 3;

  /// n points covering [u0, u0 + lu) x [v0, v0 + lv) with wrap-around.
  static SurfaceGrid periodic(int nu, int nv, double lu, double lv, double u0 = 0, double v0 = 0);
  /// Closed patch [u0, u1] x [v0, v1], endpoints included.
  static SurfaceGrid patch(int nu, int nv, double u0, double u1, double v0, double v1);

  int size() const { return nu * nv; }
  int index(int i, int j) const { return i + nu * j; }
  double u(int i) const { return u0 + i * hu; }
  double v(int j) const { return v0 + j * hv; }
  double h() const { return hu > hv ? hu : hv; }

  bool interior(int i, int j) const {
    const bool iu = periodic_u || (i >= margin && i < nu - margin);
    const bool iv = periodic_v || (j >= margin && j < nv - margin);
    return iu && iv;
  }

  /// Throws GridTooSmall unless nu, nv >= 8 and spacings are positive.
  void validate() const;

  bool same_shape(const SurfaceGrid& o) const {
    return nu == o.nu && nv == o.nv && hu == o.hu && hv == o.hv && periodic_u == o.periodic_u &&
           periodic_v == o.periodic_v;
  }
};

template <typename T>
using Field = std::vector<T>;

namespace detail {

template <typename T, typename At>
T first_derivative(At at, int i, int n, bool periodic, double h) {
  if (periodic) return T((at((i + 1) % n) - at((i - 1 + n) % n)) * (0.5 / h));
  if (i == 0) return T((at(1) * 4.0 - at(0) * 3.0 - at(2)) * (0.5 / h));
  if (i == n - 1) return T((at(n - 1) * 3.0 - at(n - 2) * 4.0 + at(n - 3)) * (0.5 / h));
  return T((at(i + 1) - at(i - 1)) * (0.5 / h));
}

template <typename T, typename At>
T second_derivative(At at, int i, int n, bool periodic, double h) {
  const double s = 1.0 / (h * h);
  if (periodic) return T((at((i + 1) % n) - at(i) * 2.0 + at((i - 1 + n) % n)) * s);
  if (i == 0) return T((at(0) * 2.0 - at(1) * 5.0 + at(2) * 4.0 - at(3)) * s);
  if (i == n - 1) return T((at(n - 1) * 2.0 - at(n - 2) * 5.0 + at(n - 3) * 4.0 - at(n - 4)) * s);
  return T((at(i + 1) - at(i) * 2.0 + at(i - 1)) * s);
}

}  // namespace detail

/// Second-order centered d/du (one-sided at non-periodic edges).
template <typename T>
Field<T> diff_u(const SurfaceGrid& g, const Field<T>& f) {
  Field<T> out(f.size());
  for (int j = 0; j < g.nv; ++j) {
    auto at = [&](int i) -> const T& { return f[static_cast<size_t>(g.index(i, j))]; };
    for (int i = 0; i < g.nu; ++i)
      out[static_cast<size_t>(g.index(i, j))] = detail::first_derivative<T>(at, i, g.nu, g.periodic_u, g.hu);
  }
  return out;
}

template <typename T>
Field<T> diff_v(const SurfaceGrid& g, const Field<T>& f) {
  Field<T> out(f.size());
  for (int i = 0; i < g.nu; ++i) {
    auto at = [&](int j) -> const T& { return f[static_cast<size_t>(g.index(i, j))]; };
    for (int j = 0; j < g.nv; ++j)
      out[static_cast<size_t>(g.index(i, j))] = detail::first_derivative<T>(at, j, g.nv, g.periodic_v, g.hv);
  }
  return out;
}

template <typename T>
Field<T> diff_uu(const SurfaceGrid& g, const Field<T>& f) {
  Field<T> out(f.size());
  for (int j = 0; j < g.nv; ++j) {
    auto at = [&](int i) -> const T& { return f[static_cast<size_t>(g.index(i, j))]; };
    for (int i = 0; i < g.nu; ++i)
      out[static_cast<size_t>(g.index(i, j))] = detail::second_derivative<T>(at, i, g.nu, g.periodic_u, g.hu);
  }
  return out;
}

template <typename T>
Field<T> diff_vv(const SurfaceGrid& g, const Field<T>& f) {
  Field<T> out(f.size());
  for (int i = 0; i < g.nu; ++i) {
    auto at = [&](int j) -> const T& { return f[static_cast<size_t>(g.index(i, j))]; };
    for (int j = 0; j < g.nv; ++j)
      out[static_cast<size_t>(g.index(i, j))] = detail::second_derivative<T>(at, j, g.nv, g.periodic_v, g.hv);
  }
  return out;
}

/// Samples f(u, v) on every grid point.
template <typename F>
auto sample(const SurfaceGrid& g, F&& f) -> Field<decltype(f(0.0, 0.0))> {
  Field<decltype(f(0.0, 0.0))> out;
  out.reserve(static_cast<size_t>(g.size()));
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) out.push_back(f(g.u(i), g.v(j)));
  return out;
}

}  // namespace tlift
