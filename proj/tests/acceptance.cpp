// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: tlift_acceptance <tlift cli binary> <scenario directory>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "tlift/ellsys.hpp"
#include "tlift/fixtures.hpp"
#include "tlift/forms.hpp"
#include "tlift/lagrangian.hpp"
#include "tlift/octo.hpp"
#include "tlift/scenario.hpp"
#include "tlift/surfaces.hpp"

using namespace tlift;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::string slope_text(const ResidualReport& r) {
  const auto s = r.estimated_order();
  return s ? sci(*s) : std::string("n/a");
}

// A rung sequence at roundoff has no meaningful slope; such a residual is
// treated as stronger than any convergence order.
bool converges_at(const ResidualReport& r, double min_slope, double final_sup) {
  const bool exact = r.max_sup() <= 1e-10;
  const auto s = r.estimated_order();
  return exact || (s && *s >= min_slope && r.final_sup() <= final_sup);
}

const std::vector<int> kLadder{32, 64, 128};

Mat random_element(const LieAlgebraRep& g, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Vec xi(g.dim());
  for (int i = 0; i < g.dim(); ++i) xi(i) = n01(rng);
  return g.element(xi);
}

TwistorField lift_for(const ImmersionField& im) {
  if (im.space.ambient_dim == 8) return canonical_lift(im).j;
  return twistor_lift(im, 1);
}

std::vector<std::string> every_fixture() {
  std::vector<std::string> names = surface_fixture_names();
  names.push_back("lagrangian_graph:x1^3");
  return names;
}

// 1. Algebraic suite.
Verdict criterion1() {
  Verdict v;
  Stopwatch clock;
  double worst = 0;
  for (const std::string name : {"su2_order4", "so5_s4"}) {
    const AlgebraFixture fx = make_algebra_fixture(name);
    const AlgebraDefects ad = algebra_defects(fx.algebra);
    const AutomorphismDefects au = automorphism_defects(fx.algebra, fx.aut);
    const SymmetricSplit split = symmetric_split(fx.algebra, fx.aut);
    const CharacterizationReport c0 = check_g0_characterization(fx.algebra, split, fx.aut);
    const CharacterizationReport c2 = check_g2_characterization(fx.algebra, split, fx.aut);
    const Mat h = stabilizer_subalgebra(split, fx.aut);
    double closure = 0;
    const Mat proj = h * h.transpose();
    for (int a = 0; a < h.cols(); ++a)
      for (int b = 0; b < h.cols(); ++b) {
        const Vec br = fx.algebra.bracket(Vec(h.col(a)), Vec(h.col(b)));
        closure = std::max(closure, (br - proj * br).norm());
      }
    const double m = std::max({ad.closure, ad.antisymmetry, ad.jacobi, ad.killing, au.max(), c0.residual(),
                               c2.residual(), closure});
    worst = std::max(worst, m);
    v.require(m <= 1e-10, name + " defect " + sci(m));
    v.require(c0.solution_dim == c0.eigenspace_dim && c2.solution_dim == c2.eigenspace_dim,
              name + " characterization dimension");
  }
  const double t = clock.seconds();
  v.require(t < 1.0, "runtime " + sci(t) + " s");
  v.detail << "max defect " << sci(worst) << ", " << sci(t) << " s";
  return v;
}

// 2. Maurer-Cartan flatness of g = exp(uX) exp(vY) in SO(5).
Verdict criterion2() {
  Verdict v;
  Stopwatch clock;
  const AlgebraFixture fx = make_algebra_fixture("so5_s4");
  std::mt19937_64 rng(20240611);
  const Mat X = random_element(fx.algebra, rng), Y = random_element(fx.algebra, rng);
  const ResidualReport r = run_ladder("maurer_cartan", kLadder, [&](int n) {
    const SurfaceGrid grid = SurfaceGrid::patch(n, n, -1, 1, -1, 1);
    const Field<Mat> g = sample(grid, [&](double u, double w) { return Mat(matrix_exp(u * X) * matrix_exp(w * Y)); });
    return curvature_residual(fx.algebra, maurer_cartan_form(fx.algebra, grid, g));
  });
  const double t = clock.seconds();
  const auto s = r.estimated_order();
  v.require(s && *s >= 1.9, "slope " + slope_text(r));
  v.require(t < 5.0, "runtime " + sci(t) + " s");
  v.detail << "slope " << slope_text(r) << ", final sup " << sci(r.final_sup()) << ", " << sci(t) << " s";
  return v;
}

// 3. Clifford torus with j_+ solves the system.
Verdict criterion3() {
  Verdict v;
  const SurfaceFixture fx = make_surface_fixture("clifford_torus");
  const AlgebraFixture alg = make_algebra_fixture("se4_r4");
  ResidualReport r2a{"residual_2a", {}}, r2b{"residual_2b", {}}, r2c{"residual_2c", {}}, scan{"zero_curvature_scan", {}};
  double t128 = 0;
  for (int n : kLadder) {
    Stopwatch clock;
    const ImmersionField im = build_immersion(fx, n);
    const GeometricFrame gf = frame_from_geometry(im, twistor_lift(im, 1), alg);
    const SystemResiduals s = system_residuals(alg.algebra, gf.alpha, alg.aut);
    const ResidualReport z = zero_curvature_scan(alg.algebra, gf.alpha, alg.aut, default_lambda_samples());
    r2a.extend(s.r2a);
    r2b.extend(s.r2b);
    r2c.extend(s.r2c);
    scan.extend(z);
    if (n == 128) t128 = clock.seconds();
  }
  for (const auto* r : {&r2a, &r2b, &r2c, &scan}) {
    v.require(converges_at(*r, 1.5, 1e-3), r->name + " slope " + slope_text(*r) + " final " + sci(r->final_sup()));
    v.detail << r->name << " " << sci(r->final_sup()) << "; ";
  }
  v.require(default_lambda_samples().size() == 24, "24 lambda samples");
  v.require(t128 < 30.0, "runtime " + sci(t128) + " s");
  v.detail << "n=128 in " << sci(t128) << " s";
  return v;
}

// 4. Perturbed torus breaks (2b) but keeps the twistor-lift property.
Verdict criterion4() {
  Verdict v;
  const SurfaceFixture fx = make_surface_fixture("perturbed_torus", {{"eps", 0.1}});
  const AlgebraFixture alg = make_algebra_fixture("se4_r4");
  ResidualReport r2a, r2b;
  for (int n : kLadder) {
    const ImmersionField im = build_immersion(fx, n);
    const GeometricFrame gf = frame_from_geometry(im, twistor_lift(im, 1), alg);
    r2a.extend(residual_2a(gf.alpha, alg.aut));
    r2b.extend(residual_2b(alg.algebra, gf.alpha, alg.aut));
  }
  v.require(r2b.final_sup() >= 1e-2, "residual_2b final " + sci(r2b.final_sup()));
  v.require(converges_at(r2a, 1.5, 1e-3), "residual_2a slope " + slope_text(r2a));
  v.detail << "residual_2b final " << sci(r2b.final_sup()) << ", residual_2a slope " << slope_text(r2a) << " final "
           << sci(r2a.final_sup());
  return v;
}

ResidualReport immersion_ladder(const std::string& kind,
                                const std::function<ResidualReport(const ImmersionField&, const TwistorField&)>& f) {
  const SurfaceFixture fx = make_surface_fixture(kind);
  return run_ladder(kind, kLadder, [&](int n) {
    const ImmersionField im = build_immersion(fx, n);
    return f(im, lift_for(im));
  });
}

// 5. Vertical harmonicity against the mean curvature identity on every fixture.
Verdict criterion5() {
  Verdict v;
  double worst_slope = 1e9;
  for (const auto& kind : every_fixture()) {
    const ResidualReport r = immersion_ladder(kind, theorem2_equivalence);
    const bool exact = r.max_sup() <= 1e-10;
    const auto s = r.estimated_order();
    if (!exact && s) worst_slope = std::min(worst_slope, *s);
    v.require(exact || (s && *s >= 1.0), kind + " slope " + slope_text(r));
  }
  v.detail << every_fixture().size() << " fixtures, smallest non-exact slope " << sci(worst_slope);
  return v;
}

// 6. Codazzi identity.
Verdict criterion6() {
  Verdict v;
  for (const std::string kind : {"plane", "round_sphere", "clifford_torus"}) {
    const ResidualReport r =
        immersion_ladder(kind, [](const ImmersionField& im, const TwistorField&) { return codazzi_identity_residual(im); });
    const bool exact = r.max_sup() <= 1e-10;
    const auto s = r.estimated_order();
    v.require(exact || (s && *s >= 1.0), kind + " slope " + slope_text(r));
    v.detail << kind << " " << (exact ? std::string("exact") : "slope " + slope_text(r)) << "; ";
  }
  return v;
}

// 7. Lagrangian chain.
Verdict criterion7() {
  Verdict v;
  const SurfaceFixture torus = make_surface_fixture("product_torus");
  ResidualReport lag, maslov, stationary;
  bool lemma = true;
  for (int n : kLadder) {
    const ImmersionField im = build_immersion(torus, n);
    const TwistorField jp = twistor_lift(im, 1);
    lag.extend(lagrangian_residual(im));
    maslov.extend(maslov_identity_residual(im, jp));
    stationary.extend(hamiltonian_stationary_residual(im));
    const Lemma4Report l4 = lemma4_check(im, jp);
    lemma = lemma && l4.consistent() && l4.vanish_together;
  }
  v.require(lag.max_sup() <= 1e-10, "lagrangian " + sci(lag.max_sup()));
  v.require(lemma, "lemma4_check");
  v.require(converges_at(maslov, 1.5, 1e-3), "maslov_identity slope " + slope_text(maslov));
  v.require(converges_at(stationary, 1.5, 1e-3), "hamiltonian_stationary slope " + slope_text(stationary));

  const SurfaceFixture cubic = make_surface_fixture("lagrangian_graph:x1^3");
  const ResidualReport cs = run_ladder("cubic", kLadder, [&](int n) {
    return hamiltonian_stationary_residual(build_immersion(cubic, n));
  });
  v.require(cs.final_sup() >= 1e-2, "cubic graph hamiltonian_stationary " + sci(cs.final_sup()));
  v.detail << "lagrangian " << sci(lag.max_sup()) << ", maslov " << sci(maslov.final_sup()) << ", stationary "
           << sci(stationary.final_sup()) << ", cubic stationary " << sci(cs.final_sup());
  return v;
}

// 8. Curvature commutation on every space-form fixture, pointwise.
Verdict criterion8() {
  Verdict v;
  std::mt19937_64 rng(77);
  std::normal_distribution<double> n01;
  double worst = 0;
  for (const auto& kind : every_fixture()) {
    const SurfaceFixture fx = make_surface_fixture(kind);
    for (int n : kLadder) {
      const ImmersionField im = build_immersion(fx, n);
      const TwistorField j = lift_for(im);
      worst = std::max(worst, curvature_commutator_residual(im, j).max_sup());
      if (n != kLadder.front()) continue;
      const int d = im.space.ambient_dim;
      for (size_t k = 0; k < im.phi.size(); k += 7) {
        Mat proj = Mat::Identity(d, d);
        if (im.space.kind == ModelKind::Sphere) {
          const Vec r = im.phi[k].normalized();
          proj -= r * r.transpose();
        }
        Vec x(d), y(d);
        for (int i = 0; i < d; ++i) {
          x(i) = n01(rng);
          y(i) = n01(rng);
        }
        worst = std::max(worst, curvature_commutation_residual(im.space, j.j[k], proj * x, proj * y));
      }
    }
  }
  v.require(worst <= 1e-10, "sup " + sci(worst));
  v.detail << every_fixture().size() << " fixtures, sup " << sci(worst);
  return v;
}

// 9. Octonion suite.
Verdict criterion9() {
  Verdict v;
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n01;
  const auto random_octonion = [&] {
    Octonion a;
    for (int i = 0; i < 8; ++i) a(i) = n01(rng);
    return a;
  };
  double norm_defect = 0;
  for (int t = 0; t < 10000; ++t) {
    const Octonion a = random_octonion(), b = random_octonion();
    norm_defect = std::max(norm_defect, std::abs(multiply(a, b).norm() - a.norm() * b.norm()));
  }
  double lq_defect = 0;
  for (int t = 0; t < 100; ++t) {
    Octonion q = random_octonion();
    q(0) = 0;
    q.normalize();
    const Mat L = left_mult_structure(q);
    lq_defect = std::max({lq_defect, max_abs(L * L + Mat::Identity(8, 8)), max_abs(L.transpose() * L - Mat::Identity(8, 8))});
  }
  double drift = 0;
  std::uniform_real_distribution<double> angle(0, 2 * M_PI);
  for (const std::string kind : {"octonion_plane", "octonion_torus"}) {
    const ImmersionField im = build_immersion(make_surface_fixture(kind), 16);
    const OctonionLift lift = canonical_lift(im);
    for (size_t k = 0; k < im.phi.size(); k += 37) {
      const Octonion e1 = im.tangent[k].col(0), e2 = im.tangent[k].col(1);
      for (int t = 0; t < 100; ++t) {
        const double th = angle(rng);
        const Octonion f1 = std::cos(th) * e1 + std::sin(th) * e2;
        const Octonion f2 = -std::sin(th) * e1 + std::cos(th) * e2;
        drift = std::max(drift, (lift_point(f1, f2) - lift.q[k]).norm());
      }
    }
  }
  v.require(norm_defect <= 1e-12, "norm multiplicativity " + sci(norm_defect));
  v.require(lq_defect <= 1e-12, "L_q invariants " + sci(lq_defect));
  v.require(drift <= 1e-10, "re-framing drift " + sci(drift));
  v.detail << "norm " << sci(norm_defect) << ", L_q " << sci(lq_defect) << ", drift " << sci(drift);
  return v;
}

// 10. Gauge invariance on the Clifford fixture. The floor at rung n is the
// Richardson estimate 4/3 |R'(n) - R'(2n)| of the discretization error of the
// gauged residual R', so the change must shrink at the scheme's order.
Verdict criterion10() {
  Verdict v;
  const SurfaceFixture fx = make_surface_fixture("clifford_torus");
  const AlgebraFixture alg = make_algebra_fixture("se4_r4");
  const SymmetricSplit split = symmetric_split(alg.algebra, alg.aut);
  const Mat hb = stabilizer_subalgebra(split, alg.aut);
  const Mat xi = alg.algebra.element(Vec(hb.col(0))), eta = alg.algebra.element(Vec(hb.col(hb.cols() - 1)));

  std::vector<std::array<double, 3>> before, after;
  for (int n : kLadder) {
    const ImmersionField im = build_immersion(fx, n);
    const GeometricFrame gf = frame_from_geometry(im, twistor_lift(im, 1), alg);
    const Field<Mat> h = sample(im.grid, [&](double u, double w) {
      return Mat(matrix_exp(0.4 * std::sin(u) * std::cos(w) * xi) * matrix_exp(0.3 * std::cos(2 * u + w) * eta));
    });
    const SystemResiduals b = system_residuals(alg.algebra, gf.alpha, alg.aut);
    const SystemResiduals a = system_residuals(alg.algebra, gauge_transform(alg.algebra, alg.aut, gf.alpha, h), alg.aut);
    before.push_back({b.r2a.final_sup(), b.r2b.final_sup(), b.r2c.final_sup()});
    after.push_back({a.r2a.final_sup(), a.r2b.final_sup(), a.r2c.final_sup()});
  }
  double worst_ratio = 0;
  for (size_t k = 0; k + 1 < kLadder.size(); ++k) {
    for (int c = 0; c < 3; ++c) {
      const double change = std::abs(after[k][c] - before[k][c]);
      const double floor = 4.0 / 3.0 * std::abs(after[k][c] - after[k + 1][c]);
      if (change <= 1e-12) continue;
      worst_ratio = std::max(worst_ratio, change / floor);
      v.require(change <= 2 * floor, "n=" + std::to_string(kLadder[k]) + " component " + std::to_string(c) + " change " +
                                         sci(change) + " floor " + sci(floor));
    }
  }
  v.detail << "max change/floor " << sci(worst_ratio) << ", final change "
           << sci(std::max({std::abs(after.back()[0] - before.back()[0]), std::abs(after.back()[1] - before.back()[1]),
                            std::abs(after.back()[2] - before.back()[2])}));
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// 11. Byte-identical reports from two deterministic runs.
Verdict criterion11(const std::string& cli, const std::string& scenario_dir) {
  Verdict v;
  const fs::path base = fs::temp_directory_path() / ("tlift_acceptance_" + std::to_string(::getpid()));
  const fs::path suite = fs::path(scenario_dir) / "full_suite.json";
  std::vector<int> codes;
  for (const std::string run : {"a", "b"}) {
    const std::string cmd = "\"" + cli + "\" run \"" + suite.string() + "\" --out \"" + (base / run).string() +
                            "\" --deterministic > /dev/null 2>&1";
    codes.push_back(std::system(cmd.c_str()));
  }
  for (const std::string file : {"report.csv", "report.json"}) {
    const std::string a = slurp(base / "a" / file), b = slurp(base / "b" / file);
    v.require(!a.empty() && a == b, file + " differs or is empty");
    v.detail << file << " " << a.size() << " bytes; ";
  }
  v.require(codes[0] == 0 && codes[1] == 0, "suite exit status");
  fs::remove_all(base);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: tlift_acceptance <tlift cli> <scenario dir>\n";
    return 2;
  }
  const std::string cli = argv[1], scenarios = argv[2];
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"algebraic suite", criterion1},
      {"Maurer-Cartan flatness", criterion2},
      {"Clifford torus solves the system", criterion3},
      {"perturbed torus negative control", criterion4},
      {"mean curvature identity on every fixture", criterion5},
      {"Codazzi identity", criterion6},
      {"Lagrangian chain", criterion7},
      {"curvature commutation", criterion8},
      {"octonion suite", criterion9},
      {"gauge invariance", criterion10},
      {"deterministic reports", [&] { return criterion11(cli, scenarios); }},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "threw " << e.what();
    }
    if (!v.pass) ++failures;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first << " ("
              << v.detail.str() << ")" << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
