#include "tlift/forms.hpp"

#include <algorithm>
#include <cmath>

namespace tlift {

namespace {

void require_same_grid(const SurfaceGrid& a, const SurfaceGrid& b) {
  if (!a.same_shape(b)) throw Error(ErrorCode::GridMismatch, "forms live on different grids");
}

}  // namespace

LieValuedOneForm LieValuedOneForm::zero(const SurfaceGrid& grid, int dim) {
  LieValuedOneForm a;
  a.grid = grid;
  a.a_u.assign(static_cast<size_t>(grid.size()), CVec::Zero(dim));
  a.a_v = a.a_u;
  return a;
}

LieValuedOneForm LieValuedOneForm::from_real(const SurfaceGrid& grid, const Field<Vec>& a_u, const Field<Vec>& a_v) {
  LieValuedOneForm a;
  a.grid = grid;
  a.a_u.reserve(a_u.size());
  a.a_v.reserve(a_v.size());
  for (const auto& x : a_u) a.a_u.push_back(x.cast<cplx>());
  for (const auto& x : a_v) a.a_v.push_back(x.cast<cplx>());
  return a;
}

LieValuedOneForm LieValuedOneForm::operator+(const LieValuedOneForm& o) const {
  require_same_grid(grid, o.grid);
  LieValuedOneForm r = *this;
  for (size_t k = 0; k < a_u.size(); ++k) {
    r.a_u[k] += o.a_u[k];
    r.a_v[k] += o.a_v[k];
  }
  return r;
}

LieValuedOneForm LieValuedOneForm::operator-(const LieValuedOneForm& o) const { return *this + o.scaled(-1.0); }

LieValuedOneForm LieValuedOneForm::scaled(cplx s) const {
  LieValuedOneForm r = *this;
  for (size_t k = 0; k < a_u.size(); ++k) {
    r.a_u[k] *= s;
    r.a_v[k] *= s;
  }
  return r;
}

LieValuedOneForm LieValuedOneForm::conjugate() const {
  LieValuedOneForm r = *this;
  for (size_t k = 0; k < a_u.size(); ++k) {
    r.a_u[k] = a_u[k].conjugate();
    r.a_v[k] = a_v[k].conjugate();
  }
  return r;
}

LieValuedTwoForm LieValuedTwoForm::operator+(const LieValuedTwoForm& o) const {
  require_same_grid(grid, o.grid);
  LieValuedTwoForm r = *this;
  for (size_t k = 0; k < value.size(); ++k) r.value[k] += o.value[k];
  return r;
}

std::pair<LieValuedOneForm, LieValuedOneForm> type_decompose(const LieValuedOneForm& alpha) {
  LieValuedOneForm a10 = alpha, a01 = alpha;
  for (size_t k = 0; k < alpha.a_u.size(); ++k) {
    const CVec& au = alpha.a_u[k];
    const CVec& av = alpha.a_v[k];
    a10.a_u[k] = 0.5 * (au - kI * av);
    a10.a_v[k] = 0.5 * (av + kI * au);
    a01.a_u[k] = au - a10.a_u[k];
    a01.a_v[k] = av - a10.a_v[k];
  }
  return {a10, a01};
}

LieValuedOneForm grade_component(const LieValuedOneForm& alpha, const GradedAutomorphism& aut, int grade) {
  const CMat& p = aut.projector(grade);
  if (alpha.dim() != p.rows()) throw Error(ErrorCode::AlgebraMismatch, "form dimension differs from automorphism");
  LieValuedOneForm r = alpha;
  for (size_t k = 0; k < alpha.a_u.size(); ++k) {
    r.a_u[k] = p * alpha.a_u[k];
    r.a_v[k] = p * alpha.a_v[k];
  }
  return r;
}

std::array<LieValuedOneForm, 4> grade_decompose(const LieValuedOneForm& alpha, const GradedAutomorphism& aut) {
  std::array<LieValuedOneForm, 4> out;
  for (int grade : kGrades) out[static_cast<size_t>(grade_slot(grade))] = grade_component(alpha, aut, grade);
  return out;
}

LieValuedTwoForm exterior_derivative(const LieValuedOneForm& alpha) {
  const SurfaceGrid& g = alpha.grid;
  if ((!g.periodic_u && g.nu < 3) || (!g.periodic_v && g.nv < 3) || g.nu < 3 || g.nv < 3)
    throw Error(ErrorCode::GridTooSmall, "exterior derivative needs at least 3 points per direction");
  const Field<CVec> dav = diff_u(g, alpha.a_v);
  const Field<CVec> dau = diff_v(g, alpha.a_u);
  LieValuedTwoForm w;
  w.grid = g;
  w.value.resize(dav.size());
  for (size_t k = 0; k < dav.size(); ++k) w.value[k] = dav[k] - dau[k];
  return w;
}

LieValuedTwoForm wedge_bracket(const LieAlgebraRep& g, const LieValuedOneForm& alpha, const LieValuedOneForm& beta) {
  require_same_grid(alpha.grid, beta.grid);
  if (alpha.dim() != g.dim() || beta.dim() != g.dim())
    throw Error(ErrorCode::AlgebraMismatch, "form dimension differs from algebra");
  LieValuedTwoForm w;
  w.grid = alpha.grid;
  w.value.resize(alpha.a_u.size());
  for (size_t k = 0; k < alpha.a_u.size(); ++k)
    w.value[k] = g.bracket(alpha.a_u[k], beta.a_v[k]) - g.bracket(alpha.a_v[k], beta.a_u[k]);
  return w;
}

LieValuedTwoForm curvature_form(const LieAlgebraRep& g, const LieValuedOneForm& alpha) {
  LieValuedTwoForm d = exterior_derivative(alpha);
  for (size_t k = 0; k < alpha.a_u.size(); ++k) d.value[k] += g.bracket(alpha.a_u[k], alpha.a_v[k]);
  return d;
}

ResidualReport measure(const std::string& name, const LieValuedTwoForm& w) {
  Field<double> n(w.value.size());
  for (size_t k = 0; k < w.value.size(); ++k) n[k] = w.value[k].norm();
  return measure(name, w.grid, n);
}

ResidualReport measure(const std::string& name, const LieValuedOneForm& a) {
  Field<double> n(a.a_u.size());
  for (size_t k = 0; k < a.a_u.size(); ++k) n[k] = std::sqrt(a.a_u[k].squaredNorm() + a.a_v[k].squaredNorm());
  return measure(name, a.grid, n);
}

ResidualReport curvature_residual(const LieAlgebraRep& g, const LieValuedOneForm& alpha) {
  return measure("curvature", curvature_form(g, alpha));
}

LieValuedOneForm loop_form(const LieValuedOneForm& alpha, const GradedAutomorphism& aut, cplx lambda) {
  if (lambda == cplx(0.0, 0.0)) throw Error(ErrorCode::ZeroLambda, "lambda must be nonzero");
  const auto [a10, a01] = type_decompose(alpha);
  const CMat& p0 = aut.projector(0);
  const CMat& p1 = aut.projector(1);
  const CMat& p2 = aut.projector(2);
  const CMat& pm1 = aut.projector(-1);
  if (alpha.dim() != p0.rows()) throw Error(ErrorCode::AlgebraMismatch, "form dimension differs from automorphism");
  const cplx l2 = lambda * lambda;
  // Combine operators once: A acts on the (1,0) part, B on the (0,1) part, C on the whole form.
  const CMat on10 = l2 * p2 + lambda * p1;
  const CMat on01 = (1.0 / lambda) * pm1 + (1.0 / l2) * p2;
  LieValuedOneForm r = alpha;
  for (size_t k = 0; k < alpha.a_u.size(); ++k) {
    r.a_u[k] = on10 * a10.a_u[k] + p0 * alpha.a_u[k] + on01 * a01.a_u[k];
    r.a_v[k] = on10 * a10.a_v[k] + p0 * alpha.a_v[k] + on01 * a01.a_v[k];
  }
  return r;
}

std::vector<cplx> default_lambda_samples() {
  std::vector<cplx> out;
  for (double radius : {0.5, 1.0, 2.0})
    for (int k = 0; k < 8; ++k) out.push_back(std::polar(radius, 2.0 * M_PI * k / 8.0));
  return out;
}

ResidualReport zero_curvature_scan(const LieAlgebraRep& g, const LieValuedOneForm& alpha,
                                   const GradedAutomorphism& aut, const std::vector<cplx>& samples) {
  if (samples.empty()) throw Error(ErrorCode::ZeroLambda, "no lambda samples");
  ResidualReport worst;
  worst.name = "zero_curvature_scan";
  for (cplx lambda : samples) {
    const ResidualReport r = curvature_residual(g, loop_form(alpha, aut, lambda));
    if (worst.entries.empty()) {
      worst.entries = r.entries;
    } else {
      worst.entries[0].sup = std::max(worst.entries[0].sup, r.entries[0].sup);
      worst.entries[0].l2 = std::max(worst.entries[0].l2, r.entries[0].l2);
    }
  }
  return worst;
}

}  // namespace tlift
