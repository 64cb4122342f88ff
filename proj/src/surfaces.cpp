#include "tlift/surfaces.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <cctype>
#include <cmath>
#include <complex>
#include <utility>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>

namespace tlift {

namespace {

using Vec2 = Eigen::Vector2d;

/// Point and velocity of a planar curve at a parameter value.
using PlanarCurve = std::function<std::pair<Vec2, Vec2>(double)>;

Vec unit(int n, int k) {
  Vec e = Vec::Zero(n);
  e(k) = 1.0;
  return e;
}

Vec2 rot90(const Vec2& x) { return {-x.y(), x.x()}; }

double param(const nlohmann::json& p, const char* key, double fallback) {
  if (!p.is_object() || !p.contains(key)) return fallback;
  if (!p[key].is_number()) throw Error(ErrorCode::ParseError, std::string("parameter '") + key + "' must be a number");
  return p[key].get<double>();
}

/// Product of a curve in the (x1, y1) plane with a curve in the (x2, y2) plane.
SurfaceFixture product_of_curves(std::string kind, ModelSpace space, PlanarCurve c1, PlanarCurve c2) {
  SurfaceFixture fx;
  fx.kind = std::move(kind);
  fx.space = std::move(space);
  fx.eval = [c1, c2](double u, double v) {
    const auto [p1, d1] = c1(u);
    const auto [p2, d2] = c2(v);
    SurfaceSample s;
    s.phi = Vec(4);
    s.phi << p1, p2;
    s.phi_u = Vec::Zero(4);
    s.phi_u.head(2) = d1;
    s.phi_v = Vec::Zero(4);
    s.phi_v.tail(2) = d2;
    return s;
  };
  fx.normal_seeds = [c1, c2](double u, double v) {
    Vec a = Vec::Zero(4), b = Vec::Zero(4);
    a.head(2) = rot90(c1(u).second);
    b.tail(2) = rot90(c2(v).second);
    return std::vector<Vec>{a, b};
  };
  return fx;
}

PlanarCurve circle(double radius, double speed) {
  return [radius, speed](double s) {
    const double t = s * speed / radius;
    return std::pair<Vec2, Vec2>{Vec2(radius * std::cos(t), radius * std::sin(t)),
                                 Vec2(-speed * std::sin(t), speed * std::cos(t))};
  };
}

PlanarCurve line() {
  return [](double s) { return std::pair<Vec2, Vec2>{Vec2(s, 0.0), Vec2(1.0, 0.0)}; };
}

/// Unit-speed closed curve with curvature 1 + eps cos(m s):
/// Gamma(s) = sum_n J_n(eps/m) e^{i(1+nm)s} / (i(1+nm)).
PlanarCurve wobbled_circle(double eps, int m, double scale) {
  const double z = eps / m;
  constexpr int kTerms = 24;
  std::vector<double> coeff;
  for (int n = -kTerms; n <= kTerms; ++n) {
    const double jn = std::cyl_bessel_j(static_cast<double>(std::abs(n)), z);
    coeff.push_back((n < 0 && (-n) % 2 == 1) ? -jn : jn);
  }
  return [coeff, z, m, scale](double s) {
    std::complex<double> g = 0.0;
    for (int n = -kTerms; n <= kTerms; ++n) {
      const double k = 1.0 + n * m;
      g += coeff[static_cast<size_t>(n + kTerms)] * std::exp(kI * (k * s)) / (kI * k);
    }
    const std::complex<double> dg = std::exp(kI * (s + z * std::sin(m * s)));
    return std::pair<Vec2, Vec2>{scale * Vec2(g.real(), g.imag()), scale * Vec2(dg.real(), dg.imag())};
  };
}

double poly_eval(const std::vector<double>& c, double x) {
  double r = 0;
  for (size_t k = c.size(); k-- > 0;) r = r * x + c[k];
  return r;
}

std::vector<double> poly_deriv(const std::vector<double>& c) {
  std::vector<double> d;
  for (size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<double>(k));
  return d;
}

/// Arc-length parametrization of x -> (x, p'(x)) over x in [-half, half].
struct GradientCurve {
  std::vector<double> d1, d2;
  double s_lo = 0, s_hi = 0;

  double speed(double x) const { return std::hypot(1.0, poly_eval(d2, x)); }

  double arc_length(double x) const {
    constexpr int kPanels = 32;
    double total = 0;
    for (int k = 0; k < kPanels; ++k) {
      const double a = x * k / kPanels, b = x * (k + 1) / kPanels;
      total += boost::math::quadrature::gauss<double, 20>::integrate([this](double t) { return speed(t); }, a, b);
    }
    return total;
  }

  double invert(double s) const {
    const auto f = [&](double x) { return std::make_pair(arc_length(x) - s, speed(x)); };
    return boost::math::tools::newton_raphson_iterate(f, s / speed(0.0), -10.0, 10.0, 50);
  }

  std::pair<Vec2, Vec2> at(double s) const {
    const double x = invert(s);
    const double sp = speed(x);
    return {Vec2(x, poly_eval(d1, x)), Vec2(1.0 / sp, poly_eval(d2, x) / sp)};
  }
};

GradientCurve gradient_curve(const std::vector<double>& p, double half) {
  GradientCurve c;
  c.d1 = poly_deriv(p);
  c.d2 = poly_deriv(c.d1);
  c.s_lo = c.arc_length(-half);
  c.s_hi = c.arc_length(half);
  return c;
}

/// Stereographic chart of the unit sphere and its derivatives.
std::array<Eigen::Vector3d, 3> stereographic(double u, double v) {
  const double d = 1.0 + u * u + v * v;
  const double d2 = d * d;
  Eigen::Vector3d p(2 * u / d, 2 * v / d, (u * u + v * v - 1.0) / d);
  Eigen::Vector3d pu((2 * d - 4 * u * u) / d2, -4 * u * v / d2, 4 * u / d2);
  Eigen::Vector3d pv(-4 * u * v / d2, (2 * d - 4 * v * v) / d2, 4 * v / d2);
  return {p, pu, pv};
}

SurfaceFixture flat_patch(std::string kind, ModelSpace space, double half = 1.0) {
  SurfaceFixture fx;
  fx.kind = std::move(kind);
  fx.space = std::move(space);
  fx.u0 = fx.v0 = -half;
  fx.u1 = fx.v1 = half;
  return fx;
}

SurfaceFixture make_plane(std::string kind, ModelSpace space) {
  SurfaceFixture fx = flat_patch(std::move(kind), std::move(space));
  fx.eval = [](double u, double v) { return SurfaceSample{Vec((Vec(4) << u, v, 0, 0).finished()), unit(4, 0), unit(4, 1)}; };
  fx.normal_seeds = [](double, double) { return std::vector<Vec>{unit(4, 2), unit(4, 3)}; };
  return fx;
}

SurfaceFixture make_round_sphere(const nlohmann::json& p) {
  const double r = param(p, "r", 1.0);
  if (!(r > 0)) throw Error(ErrorCode::ParseError, "round_sphere: r must be positive");
  SurfaceFixture fx = flat_patch("round_sphere", ModelSpace::euclidean(4));
  fx.scale = 1.0 / r;
  fx.eval = [r](double u, double v) {
    const auto [x, xu, xv] = stereographic(u, v);
    SurfaceSample s{Vec::Zero(4), Vec::Zero(4), Vec::Zero(4)};
    s.phi.head(3) = r * x;
    s.phi_u.head(3) = r * xu;
    s.phi_v.head(3) = r * xv;
    return s;
  };
  fx.normal_seeds = [](double u, double v) {
    Vec n = Vec::Zero(4);
    n.head(3) = stereographic(u, v)[0];
    return std::vector<Vec>{n, unit(4, 3)};
  };
  return fx;
}

SurfaceFixture make_helicoid() {
  SurfaceFixture fx = flat_patch("helicoid", ModelSpace::euclidean(4));
  fx.eval = [](double u, double v) {
    const double sh = std::sinh(v), ch = std::cosh(v), su = std::sin(u), cu = std::cos(u);
    return SurfaceSample{(Vec(4) << sh * su, -sh * cu, u, 0).finished(), (Vec(4) << sh * cu, sh * su, 1, 0).finished(),
                         (Vec(4) << ch * su, -ch * cu, 0, 0).finished()};
  };
  fx.normal_seeds = [f = fx.eval](double u, double v) {
    const SurfaceSample s = f(u, v);
    const Eigen::Vector3d n = Eigen::Vector3d(s.phi_u.head(3)).cross(Eigen::Vector3d(s.phi_v.head(3)));
    Vec seed = Vec::Zero(4);
    seed.head(3) = n;
    return std::vector<Vec>{seed, unit(4, 3)};
  };
  return fx;
}

SurfaceFixture make_sphere4_latitude(const nlohmann::json& p) {
  const double r = param(p, "r", 1.0);
  const double height = param(p, "height", 0.5);
  if (!(std::abs(height) < 1.0)) throw Error(ErrorCode::ParseError, "sphere4_latitude: |height| must be below 1");
  SurfaceFixture fx = flat_patch("sphere4_latitude", ModelSpace::sphere4(r));
  const double w = std::sqrt(1.0 - height * height);
  fx.scale = 1.0 / r;
  fx.eval = [r, w, height](double u, double v) {
    const auto [x, xu, xv] = stereographic(u, v);
    SurfaceSample s{Vec::Zero(5), Vec::Zero(5), Vec::Zero(5)};
    s.phi.head(3) = r * w * x;
    s.phi(4) = r * height;
    s.phi_u.head(3) = r * w * xu;
    s.phi_v.head(3) = r * w * xv;
    return s;
  };
  fx.normal_seeds = [](double, double) { return std::vector<Vec>{unit(5, 3), unit(5, 4)}; };
  return fx;
}

SurfaceFixture make_sphere4_torus(const nlohmann::json& p) {
  const double r = param(p, "r", 1.0);
  const double r1 = param(p, "r1", 0.5);
  const double r2 = param(p, "r2", 0.5);
  if (!(r1 > 0 && r2 > 0 && r1 * r1 + r2 * r2 <= 1.0))
    throw Error(ErrorCode::ParseError, "sphere4_torus: need r1, r2 > 0 and r1^2 + r2^2 <= 1");
  const double height = std::sqrt(std::max(0.0, 1.0 - r1 * r1 - r2 * r2));
  SurfaceFixture fx;
  fx.kind = "sphere4_torus";
  fx.space = ModelSpace::sphere4(r);
  fx.periodic = true;
  fx.scale = 1.0 / r;
  const double R1 = r * r1, R2 = r * r2;
  fx.u0 = fx.v0 = 0.0;
  fx.u1 = 2 * M_PI * R1;
  fx.v1 = 2 * M_PI * R2;
  fx.eval = [R1, R2, r, height](double u, double v) {
    const double a = u / R1, b = v / R2;
    return SurfaceSample{
        (Vec(5) << R1 * std::cos(a), R1 * std::sin(a), R2 * std::cos(b), R2 * std::sin(b), r * height).finished(),
        (Vec(5) << -std::sin(a), std::cos(a), 0, 0, 0).finished(),
        (Vec(5) << 0, 0, -std::sin(b), std::cos(b), 0).finished()};
  };
  fx.normal_seeds = [R1](double u, double) {
    const double a = u / R1;
    return std::vector<Vec>{(Vec(5) << std::cos(a), std::sin(a), 0, 0, 0).finished(), unit(5, 4)};
  };
  return fx;
}

SurfaceFixture make_octonion_plane(const nlohmann::json& p) {
  auto vec8 = [&](const char* key, int fallback) {
    if (!p.is_object() || !p.contains(key)) return unit(8, fallback);
    const auto& a = p[key];
    if (!a.is_array() || a.size() != 8) throw Error(ErrorCode::ParseError, std::string("octonion_plane: '") + key + "' must have 8 entries");
    Vec x(8);
    for (int k = 0; k < 8; ++k) x(k) = a[static_cast<size_t>(k)].get<double>();
    return x;
  };
  Vec a = vec8("a", 0), b = vec8("b", 1);
  if (a.norm() < 1e-12) throw Error(ErrorCode::ParseError, "octonion_plane: 'a' vanishes");
  a.normalize();
  b -= a.dot(b) * a;
  if (b.norm() < 1e-12) throw Error(ErrorCode::ParseError, "octonion_plane: 'b' is parallel to 'a'");
  b.normalize();
  SurfaceFixture fx = flat_patch("octonion_plane", ModelSpace::euclidean(8));
  fx.eval = [a, b](double u, double v) { return SurfaceSample{Vec(u * a + v * b), a, b}; };
  return fx;
}

SurfaceFixture make_octonion_torus() {
  SurfaceFixture fx;
  fx.kind = "octonion_torus";
  fx.space = ModelSpace::euclidean(8);
  fx.periodic = true;
  fx.u0 = fx.v0 = 0.0;
  fx.u1 = fx.v1 = 2 * M_PI;
  const double a = 1.0 / std::sqrt(2.0);
  fx.eval = [a](double u, double v) {
    SurfaceSample s{Vec::Zero(8), Vec::Zero(8), Vec::Zero(8)};
    s.phi.head(4) << a * std::cos(u), a * std::sin(u), a * std::cos(v), a * std::sin(v);
    s.phi_u.head(2) << -a * std::sin(u), a * std::cos(u);
    s.phi_v.segment(2, 2) << -a * std::sin(v), a * std::cos(v);
    return s;
  };
  fx.normal_seeds = [](double u, double v) {
    std::vector<Vec> seeds;
    Vec x = Vec::Zero(8), y = Vec::Zero(8);
    x.head(2) << std::cos(u), std::sin(u);
    y.segment(2, 2) << std::cos(v), std::sin(v);
    seeds.push_back(x);
    seeds.push_back(y);
    for (int k = 4; k < 8; ++k) seeds.push_back(unit(8, k));
    return seeds;
  };
  return fx;
}

SurfaceFixture make_lagrangian_graph(std::string_view poly) {
  const SeparablePolynomial sp = parse_separable_polynomial(poly);
  constexpr double kHalf = 0.5;
  auto c1 = std::make_shared<GradientCurve>(gradient_curve(sp.f, kHalf));
  auto c2 = std::make_shared<GradientCurve>(gradient_curve(sp.g, kHalf));
  SurfaceFixture fx = product_of_curves("lagrangian_graph:" + std::string(poly), ModelSpace::complex2(),
                                        [c1](double s) { return c1->at(s); }, [c2](double t) { return c2->at(t); });
  fx.u0 = c1->s_lo;
  fx.u1 = c1->s_hi;
  fx.v0 = c2->s_lo;
  fx.v1 = c2->s_hi;
  return fx;
}

}  // namespace

SurfaceGrid SurfaceFixture::grid(int n) const {
  if (periodic) return SurfaceGrid::periodic(n, n, u1 - u0, v1 - v0, u0, v0);
  return SurfaceGrid::patch(n, n, u0, u1, v0, v1);
}

std::vector<std::string> surface_fixture_names() {
  std::vector<std::string> names{"clifford_torus", "complex_line",    "helicoid",       "lagrangian_graph",
                                 "lagrangian_plane", "octonion_plane", "octonion_torus", "perturbed_torus",
                                 "plane",           "product_torus",   "round_sphere",   "sphere4_latitude",
                                 "sphere4_torus"};
  std::sort(names.begin(), names.end());
  return names;
}

SurfaceFixture make_surface_fixture(std::string_view kind, const nlohmann::json& params) {
  if (kind == "plane") return make_plane("plane", ModelSpace::euclidean(4));
  if (kind == "complex_line") return make_plane("complex_line", ModelSpace::complex2());
  if (kind == "round_sphere") return make_round_sphere(params);
  if (kind == "helicoid") return make_helicoid();
  if (kind == "sphere4_latitude") return make_sphere4_latitude(params);
  if (kind == "sphere4_torus") return make_sphere4_torus(params);
  if (kind == "octonion_plane") return make_octonion_plane(params);
  if (kind == "octonion_torus") return make_octonion_torus();

  if (kind == "clifford_torus") {
    const double a = 1.0 / std::sqrt(2.0);
    SurfaceFixture fx = product_of_curves("clifford_torus", ModelSpace::euclidean(4), circle(a, a), circle(a, a));
    fx.periodic = true;
    fx.u0 = fx.v0 = 0.0;
    fx.u1 = fx.v1 = 2 * M_PI;
    return fx;
  }
  if (kind == "product_torus") {
    const double r1 = param(params, "r1", 1.0), r2 = param(params, "r2", 0.75);
    if (!(r1 > 0 && r2 > 0)) throw Error(ErrorCode::ParseError, "product_torus: radii must be positive");
    SurfaceFixture fx = product_of_curves("product_torus", ModelSpace::complex2(), circle(r1, 1.0), circle(r2, 1.0));
    fx.periodic = true;
    fx.u0 = fx.v0 = 0.0;
    fx.u1 = 2 * M_PI * r1;
    fx.v1 = 2 * M_PI * r2;
    fx.scale = 1.0 / std::min(r1, r2);
    return fx;
  }
  if (kind == "perturbed_torus") {
    const double eps = param(params, "eps", 0.1);
    const double mode = param(params, "mode", 2.0);
    if (mode < 2 || mode != std::floor(mode)) throw Error(ErrorCode::ParseError, "perturbed_torus: mode must be an integer >= 2");
    if (!(std::abs(eps) < 1.0)) throw Error(ErrorCode::ParseError, "perturbed_torus: |eps| must be below 1");
    const double a = 1.0 / std::sqrt(2.0);
    SurfaceFixture fx = product_of_curves("perturbed_torus", ModelSpace::euclidean(4),
                                          wobbled_circle(eps, static_cast<int>(mode), a), circle(a, a));
    fx.periodic = true;
    fx.u0 = fx.v0 = 0.0;
    fx.u1 = fx.v1 = 2 * M_PI;
    return fx;
  }
  if (kind == "lagrangian_plane") {
    SurfaceFixture fx = product_of_curves("lagrangian_plane", ModelSpace::complex2(), line(), line());
    fx.u0 = fx.v0 = -1.0;
    fx.u1 = fx.v1 = 1.0;
    return fx;
  }
  constexpr std::string_view kGraph = "lagrangian_graph";
  if (kind.substr(0, kGraph.size()) == kGraph) {
    std::string poly;
    if (kind.size() > kGraph.size()) {
      if (kind[kGraph.size()] != ':') throw Error(ErrorCode::UnknownFixture, "unknown fixture '" + std::string(kind) + "'");
      poly = std::string(kind.substr(kGraph.size() + 1));
    } else if (params.is_object() && params.contains("poly")) {
      poly = params["poly"].get<std::string>();
    } else {
      poly = "x1^2-x2^2";
    }
    return make_lagrangian_graph(poly);
  }
  throw Error(ErrorCode::UnknownFixture, "unknown fixture '" + std::string(kind) + "'");
}

SeparablePolynomial parse_separable_polynomial(std::string_view text) {
  SeparablePolynomial out;
  size_t pos = 0;
  const auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::ParseError, "polynomial '" + std::string(text) + "': " + why);
  };
  const auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  const auto number = [&]() -> double {
    size_t start = pos;
    while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) ++pos;
    if (start == pos) fail("expected a number");
    return std::stod(std::string(text.substr(start, pos - start)));
  };
  const auto add = [](std::vector<double>& c, size_t k, double a) {
    if (c.size() <= k) c.resize(k + 1, 0.0);
    c[k] += a;
  };

  skip();
  if (pos == text.size()) fail("empty");
  bool first = true;
  while (true) {
    skip();
    if (pos == text.size()) break;
    double sign = 1.0;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1.0 : 1.0;
      ++pos;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    double coeff = 1.0;
    bool have_coeff = false;
    if (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
      coeff = number();
      have_coeff = true;
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip();
      }
    }
    if (pos < text.size() && text[pos] == 'x') {
      ++pos;
      if (pos >= text.size() || (text[pos] != '1' && text[pos] != '2')) fail("variables are x1 and x2");
      const bool is_x1 = text[pos] == '1';
      ++pos;
      skip();
      size_t degree = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip();
        const double d = number();
        if (d != std::floor(d) || d < 0) fail("exponents must be non-negative integers");
        degree = static_cast<size_t>(d);
      }
      skip();
      if (pos < text.size() && (text[pos] == '*' || text[pos] == 'x')) fail("mixed terms are not separable");
      add(is_x1 ? out.f : out.g, degree, sign * coeff);
    } else if (have_coeff) {
      add(out.f, 0, sign * coeff);
    } else {
      fail("expected a term");
    }
  }
  if (out.f.empty()) out.f.push_back(0.0);
  if (out.g.empty()) out.g.push_back(0.0);
  return out;
}

}  // namespace tlift
