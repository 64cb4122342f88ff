#include "tlift/ellsys.hpp"

#include <algorithm>
#include <cmath>

namespace tlift {

namespace {

Mat real_element(const LieAlgebraRep& g, const CVec& xi) { return g.element(Vec(xi.real())); }

Mat step(const LieAlgebraRep& g, const CVec& a, const CVec& b, double h) {
  return matrix_exp(0.5 * h * (real_element(g, a) + real_element(g, b)));
}

}  // namespace

ResidualReport residual_2a(const LieValuedOneForm& alpha, const GradedAutomorphism& aut) {
  ResidualReport r = measure("residual_2a", type_decompose(grade_component(alpha, aut, 1)).second);
  return r;
}

ResidualReport residual_2b(const LieAlgebraRep& g, const LieValuedOneForm& alpha, const GradedAutomorphism& aut) {
  const LieValuedOneForm a2 = type_decompose(grade_component(alpha, aut, 2)).first;
  const LieValuedOneForm a0 = grade_component(alpha, aut, 0);
  return measure("residual_2b", exterior_derivative(a2) + wedge_bracket(g, a0, a2));
}

ResidualReport residual_2c(const LieAlgebraRep& g, const LieValuedOneForm& alpha) {
  ResidualReport r = curvature_residual(g, alpha);
  r.name = "residual_2c";
  return r;
}

SystemResiduals system_residuals(const LieAlgebraRep& g, const LieValuedOneForm& alpha, const GradedAutomorphism& aut) {
  return {residual_2a(alpha, aut), residual_2b(g, alpha, aut), residual_2c(g, alpha)};
}

LieValuedOneForm maurer_cartan_form(const LieAlgebraRep& g, const SurfaceGrid& grid, const Field<Mat>& frame) {
  if (static_cast<int>(frame.size()) != grid.size()) throw Error(ErrorCode::GridMismatch, "frame does not match grid");
  const Field<Mat> du = diff_u(grid, frame);
  const Field<Mat> dv = diff_v(grid, frame);
  LieValuedOneForm a = LieValuedOneForm::zero(grid, g.dim());
  for (size_t k = 0; k < frame.size(); ++k) {
    const Mat inv = frame[k].inverse();
    a.a_u[k] = g.coords(Mat(inv * du[k])).cast<cplx>();
    a.a_v[k] = g.coords(Mat(inv * dv[k])).cast<cplx>();
  }
  return a;
}

Development develop_frame(const LieAlgebraRep& g, const LieValuedOneForm& alpha, int i0, int j0, const Mat& g0,
                          double scale) {
  const SurfaceGrid& grid = alpha.grid;
  if (i0 < 0 || i0 >= grid.nu || j0 < 0 || j0 >= grid.nv)
    throw Error(ErrorCode::GridMismatch, "base point outside the grid");
  if (alpha.dim() != g.dim()) throw Error(ErrorCode::AlgebraMismatch, "form dimension differs from algebra");
  const auto at = [&](int i, int j) { return static_cast<size_t>(grid.index(i, j)); };

  Development dev;
  dev.frame.grid = grid;
  dev.frame.algebra = g;
  dev.frame.g.assign(static_cast<size_t>(grid.size()), Mat());
  dev.frame.g[at(i0, j0)] = g0;
  for (int j = j0; j + 1 < grid.nv; ++j)
    dev.frame.g[at(i0, j + 1)] = dev.frame.g[at(i0, j)] * step(g, alpha.a_v[at(i0, j)], alpha.a_v[at(i0, j + 1)], grid.hv);
  for (int j = j0; j > 0; --j)
    dev.frame.g[at(i0, j - 1)] =
        dev.frame.g[at(i0, j)] * step(g, alpha.a_v[at(i0, j)], alpha.a_v[at(i0, j - 1)], -grid.hv);
  for (int j = 0; j < grid.nv; ++j) {
    for (int i = i0; i + 1 < grid.nu; ++i)
      dev.frame.g[at(i + 1, j)] = dev.frame.g[at(i, j)] * step(g, alpha.a_u[at(i, j)], alpha.a_u[at(i + 1, j)], grid.hu);
    for (int i = i0; i > 0; --i)
      dev.frame.g[at(i - 1, j)] =
          dev.frame.g[at(i, j)] * step(g, alpha.a_u[at(i, j)], alpha.a_u[at(i - 1, j)], -grid.hu);
  }
  for (const auto& m : dev.frame.g)
    if (!m.allFinite()) throw Error(ErrorCode::NonFinite, "development produced non-finite frames");

  const int cu = grid.periodic_u ? grid.nu : grid.nu - 1;
  const int cv = grid.periodic_v ? grid.nv : grid.nv - 1;
  for (int j = 0; j < cv; ++j) {
    for (int i = 0; i < cu; ++i) {
      const int i1 = (i + 1) % grid.nu, j1 = (j + 1) % grid.nv;
      const Mat eu = step(g, alpha.a_u[at(i, j)], alpha.a_u[at(i1, j)], grid.hu);
      const Mat ev = step(g, alpha.a_v[at(i, j)], alpha.a_v[at(i, j1)], grid.hv);
      const Mat eu1 = step(g, alpha.a_u[at(i, j1)], alpha.a_u[at(i1, j1)], grid.hu);
      const Mat ev1 = step(g, alpha.a_v[at(i1, j)], alpha.a_v[at(i1, j1)], grid.hv);
      dev.plaquette_defect = std::max(dev.plaquette_defect, (eu * ev1 - ev * eu1).norm());
    }
  }
  if (grid.periodic_u) {
    for (int j = 0; j < grid.nv; ++j) {
      const Mat ret = dev.frame.g[at(grid.nu - 1, j)] * step(g, alpha.a_u[at(grid.nu - 1, j)], alpha.a_u[at(0, j)], grid.hu);
      dev.holonomy_defect = std::max(dev.holonomy_defect, (ret - dev.frame.g[at(0, j)]).norm());
    }
  }
  if (grid.periodic_v) {
    const Mat ret = dev.frame.g[at(i0, grid.nv - 1)] * step(g, alpha.a_v[at(i0, grid.nv - 1)], alpha.a_v[at(i0, 0)], grid.hv);
    dev.holonomy_defect = std::max(dev.holonomy_defect, (ret - dev.frame.g[at(i0, 0)]).norm());
  }
  dev.curvature_warning = curvature_residual(g, alpha).final_sup() > 1e-3 * scale;
  return dev;
}

Mat adjoint_matrix(const LieAlgebraRep& g, const Mat& x) {
  const Mat inv = x.inverse();
  Mat ad(g.dim(), g.dim());
  for (int i = 0; i < g.dim(); ++i) ad.col(i) = g.coords(Mat(x * g.basis()[static_cast<size_t>(i)] * inv));
  return ad;
}

LieValuedOneForm gauge_transform(const LieAlgebraRep& g, const GradedAutomorphism& aut, const LieValuedOneForm& alpha,
                                 const Field<Mat>& h) {
  if (h.size() != alpha.a_u.size()) throw Error(ErrorCode::GridMismatch, "gauge field does not match the form");
  if (alpha.dim() != g.dim()) throw Error(ErrorCode::AlgebraMismatch, "form dimension differs from algebra");
  const Field<Mat> hu = diff_u(alpha.grid, h);
  const Field<Mat> hv = diff_v(alpha.grid, h);
  LieValuedOneForm out = alpha;
  for (size_t k = 0; k < h.size(); ++k) {
    const Mat inv = h[k].inverse();
    const Mat ad_inv = adjoint_matrix(g, inv);
    if (max_abs(ad_inv * aut.tau - aut.tau * ad_inv) > 1e-8)
      throw Error(ErrorCode::NotInH, "gauge element does not stabilize tau");
    out.a_u[k] = ad_inv.cast<cplx>() * alpha.a_u[k] + g.coords(Mat(inv * hu[k])).cast<cplx>();
    out.a_v[k] = ad_inv.cast<cplx>() * alpha.a_v[k] + g.coords(Mat(inv * hv[k])).cast<cplx>();
  }
  return out;
}

GeometricFrame frame_from_geometry(const ImmersionField& phi, const TwistorField& j, const AlgebraFixture& fx) {
  const bool sphere = phi.space.kind == ModelKind::Sphere;
  const int n = fx.algebra.ambient_dim();
  if (phi.space.dim != 4 || n != 5 || phi.space.ambient_dim != (sphere ? 5 : 4))
    throw Error(ErrorCode::DimensionMismatch, fx.name + " does not model " + phi.space.name());
  if (phi.frame_discontinuity)
    throw Error(ErrorCode::FrameDiscontinuity, phi.name + ": adapted frames jump; use a smaller patch");

  const SymmetricSplit split = symmetric_split(fx.algebra, fx.aut);
  const TangentModel tm = tangent_model(fx, split);
  const Mat jref = restrict_to_tangent(tm, fx.aut.tau);
  Mat ref(4, 4);
  {
    const Vec x1 = Vec::Unit(4, 0);
    Vec x2 = Vec::Zero(4);
    for (int k = 1; k < 4 && x2.norm() < 0.5; ++k) {
      Vec c = Vec::Unit(4, k);
      c -= x1.dot(c) * x1;
      c -= (jref * x1).dot(c) * (jref * x1);
      if (c.norm() > 0.5) x2 = c.normalized();
    }
    ref << x1, jref * x1, x2, jref * x2;
  }

  GeometricFrame out;
  out.frame.grid = phi.grid;
  out.frame.algebra = fx.algebra;
  out.frame.aut = fx.aut;
  out.frame.g.resize(phi.phi.size());
  for (size_t k = 0; k < phi.phi.size(); ++k) {
    const Mat& T = phi.tangent[k];
    const Mat& N = phi.normal[k];
    Mat f0(phi.space.ambient_dim, 4);
    f0 << T.col(0), j.j[k] * T.col(0), N.col(0), j.j[k] * N.col(0);
    const Mat F = f0 * ref.transpose();
    Mat g = Mat::Identity(5, 5);
    if (sphere) {
      g.leftCols(4) = F;
      g.col(4) = phi.phi[k] / phi.space.radius;
    } else {
      g.topLeftCorner(4, 4) = F;
      g.topRightCorner(4, 1) = phi.phi[k];
    }
    const double det = sphere ? g.determinant() : F.determinant();
    if (det < 0) throw Error(ErrorCode::NotLiftable, "frame of " + phi.name + " is orientation reversing");
    out.frame.g[k] = g;
  }
  out.alpha = maurer_cartan_form(fx.algebra, phi.grid, out.frame.g);
  return out;
}

}  // namespace tlift
