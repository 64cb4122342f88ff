#include "tlift/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tlift {

namespace {

Mat skew_part(const Mat& m) { return 0.5 * (m - m.transpose()); }

double max_column_norm(const Mat& m) {
  double r = 0;
  for (int c = 0; c < m.cols(); ++c) r = std::max(r, m.col(c).norm());
  return r;
}

Vec remove_components(Vec x, const std::vector<Vec>& basis) {
  for (const auto& b : basis) x -= b.dot(x) * b;
  return x;
}

/// Standard basis vectors spanning the normal space at one point, chosen greedily.
std::vector<Vec> default_seeds(const std::vector<Vec>& spanned, int ambient, int count) {
  std::vector<Vec> basis = spanned;
  std::vector<Vec> seeds;
  for (int c = 0; c < count; ++c) {
    int best = -1;
    double best_norm = 0;
    for (int k = 0; k < ambient; ++k) {
      const double nrm = remove_components(Vec::Unit(ambient, k), basis).norm();
      if (nrm > best_norm + 1e-12) {
        best = k;
        best_norm = nrm;
      }
    }
    seeds.push_back(Vec::Unit(ambient, best));
    basis.push_back(remove_components(Vec::Unit(ambient, best), basis).normalized());
  }
  return seeds;
}

/// e1, e2 and the radial unit vector (sphere only) at one point.
std::vector<Vec> tangent_basis(const ModelSpace& space, const Vec& phi, const Vec& pu, const Vec& pv) {
  std::vector<Vec> basis;
  if (space.kind == ModelKind::Sphere) basis.push_back(phi.normalized());
  const Vec t1 = remove_components(pu, basis);
  if (t1.norm() <= 1e-10) throw Error(ErrorCode::NotImmersed, "d/du phi vanishes");
  basis.push_back(t1.normalized());
  const Vec t2 = remove_components(pv, basis);
  if (t2.norm() <= 1e-6 * pv.norm() || t2.norm() <= 1e-10)
    throw Error(ErrorCode::NotImmersed, "d/du phi and d/dv phi are dependent");
  basis.push_back(t2.normalized());
  return basis;
}

Vec first_normal_coefficients(const Mat& c) { return 0.5 * (c.col(0) + c.col(2)); }

template <typename F>
ResidualReport pointwise_report(const std::string& name, const SurfaceGrid& grid, F&& value) {
  Field<double> out(static_cast<size_t>(grid.size()), 0.0);
  for (int j = 0; j < grid.nv; ++j)
    for (int i = 0; i < grid.nu; ++i) {
      if (!grid.interior(i, j)) continue;
      const size_t k = static_cast<size_t>(grid.index(i, j));
      out[k] = value(k);
    }
  return measure(name, grid, out);
}

}  // namespace

ImmersionField build_immersion(const SurfaceFixture& fx, const SurfaceGrid& grid, double tol_conf) {
  grid.validate();
  ImmersionField im;
  im.name = fx.kind;
  im.grid = grid;
  im.space = fx.space;
  im.scale = fx.scale;
  const int n = fx.space.ambient_dim;
  const int codim = fx.space.dim - 2;
  if (codim < 1) throw Error(ErrorCode::DimensionMismatch, "model space must have dimension above 2");

  const size_t np = static_cast<size_t>(grid.size());
  im.phi.resize(np);
  im.conformal_factor.resize(np);
  for (int j = 0; j < grid.nv; ++j) {
    for (int i = 0; i < grid.nu; ++i) {
      const size_t k = static_cast<size_t>(grid.index(i, j));
      const SurfaceSample s = fx.eval(grid.u(i), grid.v(j));
      if (s.phi.size() != n) throw Error(ErrorCode::DimensionMismatch, fx.kind + ": sample size differs from the model space");
      if (!s.phi.allFinite() || !s.phi_u.allFinite() || !s.phi_v.allFinite())
        throw Error(ErrorCode::NonFinite, fx.kind + ": non-finite sample");
      if (fx.space.kind == ModelKind::Sphere && std::abs(s.phi.norm() - fx.space.radius) > 1e-8 * fx.space.radius)
        throw Error(ErrorCode::NotImmersed, fx.kind + ": point off the sphere");
      const double l2 = s.phi_u.squaredNorm();
      if (l2 < 1e-10) {
        std::ostringstream msg;
        msg << fx.kind << ": branch point at (" << grid.u(i) << ", " << grid.v(j) << ")";
        throw Error(ErrorCode::BranchPoint, msg.str());
      }
      const double defect =
          std::max(std::abs(l2 - s.phi_v.squaredNorm()), std::abs(s.phi_u.dot(s.phi_v))) / l2;
      im.conformality_defect = std::max(im.conformality_defect, defect);
      im.phi[k] = s.phi;
    }
  }
  if (im.conformality_defect > tol_conf) {
    std::ostringstream msg;
    msg << fx.kind << ": conformality defect " << im.conformality_defect;
    throw Error(ErrorCode::NotConformal, msg.str());
  }

  im.phi_u = diff_u(grid, im.phi);
  im.phi_v = diff_v(grid, im.phi);
  im.phi_uu = diff_uu(grid, im.phi);
  im.phi_vv = diff_vv(grid, im.phi);
  im.phi_uv = diff_v(grid, im.phi_u);

  std::vector<Vec> fixed_seeds;
  if (!fx.normal_seeds) {
    const double uc = 0.5 * (fx.u0 + fx.u1), vc = 0.5 * (fx.v0 + fx.v1);
    const SurfaceSample s = fx.eval(uc, vc);
    fixed_seeds = default_seeds(tangent_basis(fx.space, s.phi, s.phi_u, s.phi_v), n, codim);
  }

  im.tangent.resize(np);
  im.normal.resize(np);
  im.chart.resize(np);
  for (int j = 0; j < grid.nv; ++j) {
    for (int i = 0; i < grid.nu; ++i) {
      const size_t k = static_cast<size_t>(grid.index(i, j));
      std::vector<Vec> basis = tangent_basis(fx.space, im.phi[k], im.phi_u[k], im.phi_v[k]);
      const bool sphere = fx.space.kind == ModelKind::Sphere;
      const std::vector<Vec> seeds = fx.normal_seeds ? fx.normal_seeds(grid.u(i), grid.v(j)) : fixed_seeds;
      std::vector<Vec> normals;
      for (const auto& seed : seeds) {
        if (static_cast<int>(normals.size()) == codim) break;
        std::vector<Vec> all = basis;
        all.insert(all.end(), normals.begin(), normals.end());
        const Vec r = remove_components(seed, all);
        if (r.norm() > 1e-3 * std::max(seed.norm(), 1e-300)) normals.push_back(r.normalized());
      }
      if (static_cast<int>(normals.size()) != codim) throw Error(ErrorCode::NotImmersed, fx.kind + ": degenerate normal seeds");

      Mat full(n, n);
      int c = 0;
      const size_t first_tangent = sphere ? 1 : 0;
      full.col(c++) = basis[first_tangent];
      full.col(c++) = basis[first_tangent + 1];
      for (const auto& nv : normals) full.col(c++) = nv;
      if (sphere) full.col(c++) = basis[0];
      if (full.determinant() < 0) normals.back() = -normals.back();

      Mat T(n, 2);
      T.col(0) = basis[first_tangent];
      T.col(1) = basis[first_tangent + 1];
      Mat N(n, codim);
      for (int a = 0; a < codim; ++a) N.col(a) = normals[static_cast<size_t>(a)];
      Eigen::Matrix2d A;
      A(0, 0) = T.col(0).dot(im.phi_u[k]);
      A(1, 0) = 0.0;
      A(0, 1) = T.col(0).dot(im.phi_v[k]);
      A(1, 1) = T.col(1).dot(im.phi_v[k]);
      im.tangent[k] = T;
      im.normal[k] = N;
      im.chart[k] = A;
      im.conformal_factor[k] = im.phi_u[k].squaredNorm();
    }
  }

  for (int j = 0; j < grid.nv && !im.frame_discontinuity; ++j) {
    for (int i = 0; i < grid.nu; ++i) {
      const size_t k = static_cast<size_t>(grid.index(i, j));
      const auto jump = [&](int i2, int j2) {
        const size_t k2 = static_cast<size_t>(grid.index(i2, j2));
        // Largest single-column move; a seed swap moves a column by sqrt(2), a flip by 2.
        return std::max((im.tangent[k] - im.tangent[k2]).colwise().norm().maxCoeff(),
                        (im.normal[k] - im.normal[k2]).colwise().norm().maxCoeff());
      };
      const bool has_u = i + 1 < grid.nu || grid.periodic_u;
      const bool has_v = j + 1 < grid.nv || grid.periodic_v;
      if ((has_u && jump((i + 1) % grid.nu, j) > 1.0) || (has_v && jump(i, (j + 1) % grid.nv) > 1.0)) {
        im.frame_discontinuity = true;
        break;
      }
    }
  }
  return im;
}

ImmersionField build_immersion(const SurfaceFixture& fx, int n, double tol_conf) {
  return build_immersion(fx, fx.grid(n), tol_conf);
}

TwistorField twistor_lift(const ImmersionField& phi, int sign) {
  if (phi.codim() != 2) throw Error(ErrorCode::DimensionMismatch, "twistor lifts j+- need codimension 2");
  if (sign != 1 && sign != -1) throw Error(ErrorCode::DimensionMismatch, "sign must be +1 or -1");
  TwistorField tw;
  tw.grid = phi.grid;
  tw.sign = sign;
  tw.j.resize(phi.tangent.size());
  for (size_t k = 0; k < phi.tangent.size(); ++k) {
    const Mat& T = phi.tangent[k];
    const Mat& N = phi.normal[k];
    if (T.size() == 0) throw Error(ErrorCode::NotImmersed, "missing frame");
    tw.j[k] = T.col(1) * T.col(0).transpose() - T.col(0) * T.col(1).transpose() +
              sign * (N.col(1) * N.col(0).transpose() - N.col(0) * N.col(1).transpose());
  }
  return tw;
}

TwistorField negated(const TwistorField& j) {
  TwistorField out = j;
  for (auto& m : out.j) m = -m;
  out.sign = -j.sign;
  return out;
}

double TwistorInvariants::max() const { return std::max({square, skew, tangent_stability}); }

TwistorInvariants twistor_invariants(const ImmersionField& phi, const TwistorField& j) {
  TwistorInvariants inv;
  const int n = phi.space.ambient_dim;
  for (size_t k = 0; k < j.j.size(); ++k) {
    Mat proj = Mat::Identity(n, n);
    if (phi.space.kind == ModelKind::Sphere) {
      const Vec r = phi.phi[k].normalized();
      proj -= r * r.transpose();
    }
    const Mat& J = j.j[k];
    const Mat& T = phi.tangent[k];
    inv.square = std::max(inv.square, op_norm(Mat(J * J + proj)));
    inv.skew = std::max(inv.skew, op_norm(Mat(J.transpose() + J)));
    const Vec je1 = J * T.col(0);
    inv.tangent_stability = std::max(inv.tangent_stability, (je1 - T * (T.transpose() * je1)).norm());
  }
  return inv;
}

ResidualReport twistor_holomorphicity_residual(const ImmersionField& phi, const TwistorField& j) {
  return pointwise_report("twistor_holomorphicity", phi.grid, [&](size_t k) {
    return (phi.phi_v[k] - j.j[k] * phi.phi_u[k]).norm() / phi.phi_u[k].norm();
  });
}

SecondFundamentalForm second_fundamental_form(const ImmersionField& phi) {
  SecondFundamentalForm ii;
  ii.grid = phi.grid;
  ii.coeff.resize(phi.phi.size());
  for (size_t k = 0; k < phi.phi.size(); ++k) {
    const Mat& N = phi.normal[k];
    const Eigen::Matrix2d B = phi.chart[k].inverse();
    const Vec uu = N.transpose() * phi.phi_uu[k];
    const Vec uv = N.transpose() * phi.phi_uv[k];
    const Vec vv = N.transpose() * phi.phi_vv[k];
    Mat c(N.cols(), 3);
    for (int a = 0; a < N.cols(); ++a) {
      Eigen::Matrix2d S;
      S << uu(a), uv(a), uv(a), vv(a);
      const Eigen::Matrix2d E = B.transpose() * S * B;
      c(a, 0) = E(0, 0);
      c(a, 1) = E(0, 1);
      c(a, 2) = E(1, 1);
    }
    ii.coeff[k] = c;
  }
  return ii;
}

Field<Vec> mean_curvature(const SecondFundamentalForm& ii) {
  Field<Vec> h(ii.coeff.size());
  for (size_t k = 0; k < h.size(); ++k) h[k] = first_normal_coefficients(ii.coeff[k]);
  return h;
}

Field<Vec> mean_curvature_vector(const ImmersionField& phi, const SecondFundamentalForm& ii) {
  Field<Vec> h = mean_curvature(ii);
  for (size_t k = 0; k < h.size(); ++k) h[k] = phi.normal[k] * h[k];
  return h;
}

ResidualReport ii_symmetry_residual(const ImmersionField& phi) {
  const Field<Mat> tu = diff_u(phi.grid, phi.tangent);
  const Field<Mat> tv = diff_v(phi.grid, phi.tangent);
  return pointwise_report("ii_symmetry", phi.grid, [&](size_t k) {
    const Eigen::Matrix2d& A = phi.chart[k];
    const Mat& N = phi.normal[k];
    const Mat d_e1 = tu[k] / A(0, 0);
    const Mat d_e2 = (tv[k] - (A(0, 1) / A(0, 0)) * tu[k]) / A(1, 1);
    return (N.transpose() * (d_e1.col(1) - d_e2.col(0))).norm();
  });
}

std::pair<Mat, Mat> split_operator(const Mat& A, const Mat& jT, const Mat& jN) {
  const Mat twisted = jN * A * jT;
  return {0.5 * (A - twisted), 0.5 * (A + twisted)};
}

SplitII split_II(const ImmersionField& phi, const SecondFundamentalForm& ii, const TwistorField& j) {
  SplitII s;
  const size_t np = ii.coeff.size();
  s.plus_e1.resize(np);
  s.minus_e1.resize(np);
  s.plus_e2.resize(np);
  s.minus_e2.resize(np);
  for (size_t k = 0; k < np; ++k) {
    const Mat& T = phi.tangent[k];
    const Mat& N = phi.normal[k];
    const Mat jT = T.transpose() * j.j[k] * T;
    const Mat jN = N.transpose() * j.j[k] * N;
    const Mat& c = ii.coeff[k];
    Mat a1(c.rows(), 2), a2(c.rows(), 2);
    a1 << c.col(0), c.col(1);
    a2 << c.col(1), c.col(2);
    std::tie(s.plus_e1[k], s.minus_e1[k]) = split_operator(a1, jT, jN);
    std::tie(s.plus_e2[k], s.minus_e2[k]) = split_operator(a2, jT, jN);
  }
  return s;
}

FrameConnection frame_connection(const ImmersionField& phi) {
  FrameConnection fc;
  const Field<Mat> tu = diff_u(phi.grid, phi.tangent);
  const Field<Mat> tv = diff_v(phi.grid, phi.tangent);
  const Field<Mat> nu = diff_u(phi.grid, phi.normal);
  const Field<Mat> nv = diff_v(phi.grid, phi.normal);
  const size_t np = phi.tangent.size();
  fc.omega_u.resize(np);
  fc.omega_v.resize(np);
  fc.eta_u.resize(np);
  fc.eta_v.resize(np);
  for (size_t k = 0; k < np; ++k) {
    fc.omega_u[k] = skew_part(phi.tangent[k].transpose() * tu[k]);
    fc.omega_v[k] = skew_part(phi.tangent[k].transpose() * tv[k]);
    fc.eta_u[k] = skew_part(phi.normal[k].transpose() * nu[k]);
    fc.eta_v[k] = skew_part(phi.normal[k].transpose() * nv[k]);
  }
  return fc;
}

HarmonicityData harmonicity_data(const ImmersionField& phi, const TwistorField& j) {
  const SurfaceGrid& g = phi.grid;
  const size_t np = phi.phi.size();
  const FrameConnection fc = frame_connection(phi);
  const SecondFundamentalForm ii = second_fundamental_form(phi);

  HarmonicityData hd;
  hd.jT.resize(np);
  hd.jN.resize(np);
  Field<Mat> mu(np), mv(np), mmu(np), mmv(np);
  Field<Vec> h(np);
  for (size_t k = 0; k < np; ++k) {
    const Mat& T = phi.tangent[k];
    const Mat& N = phi.normal[k];
    hd.jT[k] = T.transpose() * j.j[k] * T;
    hd.jN[k] = N.transpose() * j.j[k] * N;
    const Mat B = phi.chart[k].inverse();
    Mat su(N.cols(), 2), sv(N.cols(), 2);
    su << N.transpose() * phi.phi_uu[k], N.transpose() * phi.phi_uv[k];
    sv << N.transpose() * phi.phi_uv[k], N.transpose() * phi.phi_vv[k];
    mu[k] = su * B;
    mv[k] = sv * B;
    mmu[k] = split_operator(mu[k], hd.jT[k], hd.jN[k]).second;
    mmv[k] = split_operator(mv[k], hd.jT[k], hd.jN[k]).second;
    h[k] = first_normal_coefficients(ii.coeff[k]);
  }

  const Field<Mat> dmu = diff_u(g, mu), dmv = diff_v(g, mv);
  const Field<Mat> dmmu = diff_u(g, mmu), dmmv = diff_v(g, mmv);
  const Field<Vec> dhu = diff_u(g, h), dhv = diff_v(g, h);

  hd.div_ii.resize(np);
  hd.div_ii_minus.resize(np);
  hd.grad_h.resize(np);
  for (size_t k = 0; k < np; ++k) {
    const Eigen::Matrix2d& A = phi.chart[k];
    const double area = A(0, 0) * A(1, 1);
    const auto covariant = [&](const Mat& dm, const Mat& m, const Mat& eta, const Mat& omega) {
      return Mat(dm + eta * m - m * omega);
    };
    hd.div_ii[k] = (covariant(dmu[k], mu[k], fc.eta_u[k], fc.omega_u[k]) +
                    covariant(dmv[k], mv[k], fc.eta_v[k], fc.omega_v[k])) /
                   area;
    hd.div_ii_minus[k] = (covariant(dmmu[k], mmu[k], fc.eta_u[k], fc.omega_u[k]) +
                          covariant(dmmv[k], mmv[k], fc.eta_v[k], fc.omega_v[k])) /
                         area;
    const Vec grad_u = dhu[k] + fc.eta_u[k] * h[k];
    const Vec grad_v = dhv[k] + fc.eta_v[k] * h[k];
    Mat gh(h[k].size(), 2);
    gh.col(0) = grad_u / A(0, 0);
    gh.col(1) = (grad_v - (A(0, 1) / A(0, 0)) * grad_u) / A(1, 1);
    hd.grad_h[k] = gh;
  }
  return hd;
}

Field<Mat> codazzi_curvature_term(const ImmersionField& phi) {
  Field<Mat> out(phi.phi.size());
  for (size_t k = 0; k < out.size(); ++k) {
    const Mat& T = phi.tangent[k];
    const Mat& N = phi.normal[k];
    Mat term = Mat::Zero(N.cols(), 2);
    for (int a = 0; a < 2; ++a) {
      Vec sum = Vec::Zero(T.rows());
      for (int i = 0; i < 2; ++i) sum += curvature_operator(phi.space, T.col(i), T.col(a)) * T.col(i);
      term.col(a) = N.transpose() * sum;
    }
    out[k] = term;
  }
  return out;
}

ResidualReport vertical_harmonicity_residual(const ImmersionField& phi, const TwistorField& j) {
  const HarmonicityData hd = harmonicity_data(phi, j);
  return pointwise_report("vertical_harmonicity", phi.grid, [&](size_t k) { return max_column_norm(hd.div_ii_minus[k]); });
}

ResidualReport codazzi_identity_residual(const ImmersionField& phi) {
  TwistorField dummy;
  dummy.grid = phi.grid;
  dummy.j.assign(phi.phi.size(), Mat::Zero(phi.space.ambient_dim, phi.space.ambient_dim));
  const HarmonicityData hd = harmonicity_data(phi, dummy);
  const Field<Mat> curv = codazzi_curvature_term(phi);
  return pointwise_report("codazzi", phi.grid, [&](size_t k) {
    return max_column_norm(hd.div_ii[k] - (curv[k] + 2.0 * hd.grad_h[k]));
  });
}

ResidualReport holomorphic_H_residual(const ImmersionField& phi, const TwistorField& j) {
  const HarmonicityData hd = harmonicity_data(phi, j);
  return pointwise_report("holomorphic_H", phi.grid, [&](size_t k) {
    return (0.5 * (hd.grad_h[k].col(0) + hd.jN[k] * hd.grad_h[k].col(1))).norm();
  });
}

ResidualReport theorem2_equivalence(const ImmersionField& phi, const TwistorField& j) {
  const HarmonicityData hd = harmonicity_data(phi, j);
  return pointwise_report("theorem2", phi.grid, [&](size_t k) {
    const Mat minus = split_operator(hd.grad_h[k], hd.jT[k], hd.jN[k]).second;
    return max_column_norm(hd.div_ii_minus[k] - 2.0 * minus);
  });
}

ResidualReport curvature_commutator_residual(const ImmersionField& phi, const TwistorField& j, const CurvatureFn& R) {
  return pointwise_report("curvature_commutator", phi.grid, [&](size_t k) {
    const Mat& T = phi.tangent[k];
    const Mat r = R(T.col(0), T.col(1));
    return op_norm(Mat(r * j.j[k] - j.j[k] * r));
  });
}

ResidualReport curvature_commutator_residual(const ImmersionField& phi, const TwistorField& j) {
  return curvature_commutator_residual(
      phi, j, [&](const Vec& x, const Vec& y) { return curvature_operator(phi.space, x, y); });
}

ResidualReport mean_curvature_norm(const ImmersionField& phi) {
  const SecondFundamentalForm ii = second_fundamental_form(phi);
  return pointwise_report("mean_curvature_norm", phi.grid,
                          [&](size_t k) { return first_normal_coefficients(ii.coeff[k]).norm(); });
}

}  // namespace tlift
