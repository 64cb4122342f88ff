#include "tlift/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "tlift/ellsys.hpp"
#include "tlift/lagrangian.hpp"
#include "tlift/octo.hpp"
#include "tlift/surfaces.hpp"

namespace tlift {

namespace {

using json = nlohmann::json;

/// Lazily built objects for one scenario on one ladder rung.
class Rung {
 public:
  Rung(const Scenario& s, const SurfaceFixture& fx, int n) : s_(s), fx_(fx), n_(n) {}

  const Scenario& scenario() const { return s_; }
  double h() { return immersion().grid.h(); }

  const ImmersionField& immersion() {
    if (!imm_) imm_ = build_immersion(fx_, n_);
    return *imm_;
  }

  const TwistorField& twistor() {
    if (!tw_) {
      const ImmersionField& im = immersion();
      if (im.space.ambient_dim == 8) {
        tw_ = canonical_lift(im).j;
      } else if (s_.lift == "minus") {
        tw_ = twistor_lift(im, -1);
      } else {
        tw_ = twistor_lift(im, 1);
        if (s_.lift == "anti") tw_ = negated(*tw_);
      }
    }
    return *tw_;
  }

  const AlgebraFixture& algebra() {
    if (!alg_) alg_ = make_algebra_fixture(algebra_fixture_for(immersion().space));
    return *alg_;
  }

  const GeometricFrame& frame() {
    if (!gf_) gf_ = frame_from_geometry(immersion(), twistor(), algebra());
    return *gf_;
  }

 private:
  const Scenario& s_;
  const SurfaceFixture& fx_;
  int n_;
  std::optional<ImmersionField> imm_;
  std::optional<TwistorField> tw_;
  std::optional<AlgebraFixture> alg_;
  std::optional<GeometricFrame> gf_;
};

ResidualReport scalar_report(const std::string& name, double h, double value) {
  ResidualReport r;
  r.name = name;
  r.entries.push_back({h, value, value});
  return r;
}

/// Smooth periodic gauge h = exp(f xi) with xi the first basis vector of h.
Field<Mat> smooth_gauge(const GeometricFrame& gf) {
  const SymmetricSplit split = symmetric_split(gf.frame.algebra, gf.frame.aut);
  const Mat hb = stabilizer_subalgebra(split, gf.frame.aut);
  const Mat xi = gf.frame.algebra.element(Vec(hb.col(0)));
  const SurfaceGrid& g = gf.frame.grid;
  const double lu = g.hu * (g.periodic_u ? g.nu : g.nu - 1);
  const double lv = g.hv * (g.periodic_v ? g.nv : g.nv - 1);
  return sample(g, [&](double u, double v) {
    const double f = 0.3 * std::sin(2 * M_PI * (u - g.u0) / lu) * std::cos(2 * M_PI * (v - g.v0) / lv);
    return matrix_exp(f * xi);
  });
}

using CheckFn = std::function<std::vector<ResidualReport>(Rung&)>;

const std::map<std::string, CheckFn>& registry() {
  static const std::map<std::string, CheckFn> checks = {
      {"residual_2a",
       [](Rung& r) { return std::vector{residual_2a(r.frame().alpha, r.frame().frame.aut)}; }},
      {"residual_2b",
       [](Rung& r) { return std::vector{residual_2b(r.frame().frame.algebra, r.frame().alpha, r.frame().frame.aut)}; }},
      {"residual_2c", [](Rung& r) { return std::vector{residual_2c(r.frame().frame.algebra, r.frame().alpha)}; }},
      {"system_residuals",
       [](Rung& r) {
         const SystemResiduals s = system_residuals(r.frame().frame.algebra, r.frame().alpha, r.frame().frame.aut);
         return std::vector{s.r2a, s.r2b, s.r2c};
       }},
      {"zero_curvature_scan",
       [](Rung& r) {
         const auto& samples = r.scenario().lambda_samples;
         return std::vector{zero_curvature_scan(r.frame().frame.algebra, r.frame().alpha, r.frame().frame.aut,
                                                samples.empty() ? default_lambda_samples() : samples)};
       }},
      {"theorem2", [](Rung& r) { return std::vector{theorem2_equivalence(r.immersion(), r.twistor())}; }},
      {"vertical_harmonicity",
       [](Rung& r) { return std::vector{vertical_harmonicity_residual(r.immersion(), r.twistor())}; }},
      {"holomorphic_H", [](Rung& r) { return std::vector{holomorphic_H_residual(r.immersion(), r.twistor())}; }},
      {"codazzi", [](Rung& r) { return std::vector{codazzi_identity_residual(r.immersion())}; }},
      {"curvature_commutator",
       [](Rung& r) { return std::vector{curvature_commutator_residual(r.immersion(), r.twistor())}; }},
      {"twistor_holomorphicity",
       [](Rung& r) { return std::vector{twistor_holomorphicity_residual(r.immersion(), r.twistor())}; }},
      {"ii_symmetry", [](Rung& r) { return std::vector{ii_symmetry_residual(r.immersion())}; }},
      {"lagrangian", [](Rung& r) { return std::vector{lagrangian_residual(r.immersion())}; }},
      {"maslov_identity", [](Rung& r) { return std::vector{maslov_identity_residual(r.immersion(), r.twistor())}; }},
      {"hamiltonian_stationary", [](Rung& r) { return std::vector{hamiltonian_stationary_residual(r.immersion())}; }},
      {"octonion_lift",
       [](Rung& r) { return std::vector{scalar_report("octonion_lift", r.h(), canonical_lift(r.immersion()).lift_defect)}; }},
      {"gauge_invariance",
       [](Rung& r) {
         const GeometricFrame& gf = r.frame();
         const LieAlgebraRep& g = gf.frame.algebra;
         const SystemResiduals before = system_residuals(g, gf.alpha, gf.frame.aut);
         const SystemResiduals after =
             system_residuals(g, gauge_transform(g, gf.frame.aut, gf.alpha, smooth_gauge(gf)), gf.frame.aut);
         const double d = std::max({std::abs(after.r2a.final_sup() - before.r2a.final_sup()),
                                    std::abs(after.r2b.final_sup() - before.r2b.final_sup()),
                                    std::abs(after.r2c.final_sup() - before.r2c.final_sup())});
         return std::vector{scalar_report("gauge_invariance", r.h(), d)};
       }},
      {"development",
       [](Rung& r) {
         const GeometricFrame& gf = r.frame();
         const SurfaceGrid& g = gf.frame.grid;
         const int i0 = g.nu / 2, j0 = g.nv / 2;
         const Development dev =
             develop_frame(gf.frame.algebra, gf.alpha, i0, j0, gf.frame.g[static_cast<size_t>(g.index(i0, j0))]);
         Field<double> err(gf.frame.g.size());
         for (size_t k = 0; k < err.size(); ++k) err[k] = (dev.frame.g[k] - gf.frame.g[k]).norm();
         return std::vector{measure("development", g, err)};
       }},
  };
  return checks;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9e", x);
  return buf;
}

Expectation parse_expect_field(const json& j, const std::string& where) {
  if (!j.is_string()) throw Error(ErrorCode::ParseError, where + ": 'expect' must be a string");
  return parse_expectation(j.get<std::string>());
}

Scenario parse_one(const json& j, size_t index) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "scenario " + std::to_string(index) + " is not an object");
  Scenario s;
  const std::string where = "scenario " + std::to_string(index);
  if (!j.contains("fixture")) throw Error(ErrorCode::ParseError, where + ": missing 'fixture'");
  const json& f = j["fixture"];
  if (f.is_string()) {
    s.fixture = f.get<std::string>();
  } else if (f.is_object() && f.contains("kind") && f["kind"].is_string()) {
    s.fixture = f["kind"].get<std::string>();
    if (f.contains("params")) {
      if (!f["params"].is_object()) throw Error(ErrorCode::ParseError, where + ": 'params' must be an object");
      s.params = f["params"];
    }
  } else {
    throw Error(ErrorCode::ParseError, where + ": 'fixture' must be a kind or {kind, params}");
  }
  s.name = j.value("name", s.fixture + "#" + std::to_string(index));
  if (j.contains("model_space")) {
    if (!j["model_space"].is_string()) throw Error(ErrorCode::ParseError, where + ": 'model_space' must be a string");
    s.model_space = j["model_space"].get<std::string>();
  }
  if (j.contains("grid_ladder")) {
    const json& l = j["grid_ladder"];
    if (!l.is_array() || l.empty()) throw Error(ErrorCode::ParseError, where + ": 'grid_ladder' must be a nonempty array");
    s.ladder.clear();
    for (const auto& n : l) {
      if (!n.is_number_integer() || n.get<int>() < 8)
        throw Error(ErrorCode::ParseError, where + ": ladder entries must be integers >= 8");
      s.ladder.push_back(n.get<int>());
    }
  }
  if (j.contains("expect")) s.expect = parse_expect_field(j["expect"], where);
  if (j.contains("lift")) {
    s.lift = j["lift"].get<std::string>();
    if (s.lift != "plus" && s.lift != "minus" && s.lift != "anti")
      throw Error(ErrorCode::ParseError, where + ": 'lift' must be plus, minus or anti");
  }
  if (j.contains("checks")) {
    if (!j["checks"].is_array()) throw Error(ErrorCode::ParseError, where + ": 'checks' must be an array");
    for (const auto& c : j["checks"]) {
      CheckSpec spec;
      if (c.is_string()) {
        spec.name = c.get<std::string>();
      } else if (c.is_object() && c.contains("name") && c["name"].is_string()) {
        spec.name = c["name"].get<std::string>();
        if (c.contains("expect")) spec.expect = parse_expect_field(c["expect"], where);
      } else {
        throw Error(ErrorCode::ParseError, where + ": each check is a name or {name, expect}");
      }
      if (!registry().count(spec.name)) throw Error(ErrorCode::UnknownCheck, where + ": unknown check '" + spec.name + "'");
      s.checks.push_back(spec);
    }
  }
  if (j.contains("lambda_samples")) {
    for (const auto& l : j["lambda_samples"]) {
      if (!l.is_object() || !l.contains("re") || !l.contains("im"))
        throw Error(ErrorCode::ParseError, where + ": lambda samples are {re, im}");
      const cplx z(l["re"].get<double>(), l["im"].get<double>());
      if (z == cplx(0, 0)) throw Error(ErrorCode::ParseError, where + ": lambda samples must be nonzero");
      s.lambda_samples.push_back(z);
    }
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) throw Error(ErrorCode::ParseError, where + ": 'tolerances' must be an object");
    for (const auto& [key, value] : t.items()) {
      if (!value.is_number()) throw Error(ErrorCode::ParseError, where + ": tolerance '" + key + "' must be a number");
      const double x = value.get<double>();
      if (key == "scale") s.thresholds.scale = x;
      else if (key == "min_slope") s.thresholds.min_slope = x;
      else if (key == "converge_sup") s.thresholds.converge_sup = x;
      else if (key == "stay_large_sup") s.thresholds.stay_large_sup = x;
      else if (key == "exact_sup") s.thresholds.exact_sup = x;
      else throw Error(ErrorCode::ParseError, where + ": unknown tolerance '" + key + "'");
    }
  }

  // Resolve the fixture now so unknown kinds and bad parameters fail before any work.
  SurfaceFixture fx = make_surface_fixture(s.fixture, s.params);
  if (s.model_space) {
    const ModelSpace m = parse_model_space(*s.model_space, fx.space.radius);
    if (m.ambient_dim != fx.space.ambient_dim || (m.kind == ModelKind::Sphere) != (fx.space.kind == ModelKind::Sphere))
      throw Error(ErrorCode::ParseError, where + ": fixture " + s.fixture + " does not live in " + *s.model_space);
  }
  return s;
}

}  // namespace

std::vector<Scenario> parse_scenarios(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  std::vector<Scenario> out;
  try {
    if (j.is_object() && j.contains("scenarios")) j = j["scenarios"];
    if (j.is_array()) {
      for (size_t i = 0; i < j.size(); ++i) out.push_back(parse_one(j[i], i));
    } else {
      out.push_back(parse_one(j, 0));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed scenario: ") + e.what());
  }
  return out;
}

bool RunResult::ok() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const CheckOutcome& o) { return o.ok(); });
}

RunResult run_scenario(const Scenario& s) {
  SurfaceFixture fx = make_surface_fixture(s.fixture, s.params);
  if (s.model_space) fx.space = parse_model_space(*s.model_space, fx.space.radius);

  // Reports keyed by check then by report name, in first-seen order.
  struct Pending {
    std::string check;
    Expectation expect;
    std::vector<ResidualReport> reports;
    std::string error;
  };
  std::vector<Pending> pending;
  for (const auto& c : s.checks) pending.push_back({c.name, c.expect.value_or(s.expect), {}, {}});

  for (int n : s.ladder) {
    Rung rung(s, fx, n);
    for (auto& p : pending) {
      if (!p.error.empty()) continue;
      try {
        const std::vector<ResidualReport> got = registry().at(p.check)(rung);
        if (p.reports.empty()) {
          p.reports = got;
        } else {
          for (size_t i = 0; i < got.size(); ++i) p.reports[i].extend(got[i]);
        }
      } catch (const Error& e) {
        p.error = e.what();
      }
    }
  }

  RunResult result;
  for (const auto& p : pending) {
    if (!p.error.empty()) {
      CheckOutcome o;
      o.scenario = s.name;
      o.check = p.check;
      o.expect = p.expect;
      o.error = p.error;
      o.classification.verdict = "error";
      result.outcomes.push_back(o);
      continue;
    }
    for (const auto& r : p.reports) {
      CheckOutcome o;
      o.scenario = s.name;
      o.check = r.name;
      o.expect = p.expect;
      o.report = r;
      ClassifierThresholds t = s.thresholds;
      t.scale *= fx.scale;
      o.classification = classify(r, p.expect, t);
      result.outcomes.push_back(o);
    }
  }
  return result;
}

RunResult run_scenarios(const std::vector<Scenario>& all) {
  RunResult out;
  for (const auto& s : all) {
    RunResult r = run_scenario(s);
    out.outcomes.insert(out.outcomes.end(), r.outcomes.begin(), r.outcomes.end());
  }
  return out;
}

std::string outcomes_csv(const RunResult& r) {
  std::ostringstream out;
  out << "scenario,check,h,sup,l2,slope,verdict\n";
  for (const auto& o : r.outcomes) {
    const std::string slope = o.classification.slope ? fmt(*o.classification.slope) : "";
    if (o.report.entries.empty()) {
      out << o.scenario << ',' << o.check << ",,,," << slope << ',' << o.classification.verdict << '\n';
      continue;
    }
    for (const auto& e : o.report.entries)
      out << o.scenario << ',' << o.check << ',' << fmt(e.h) << ',' << fmt(e.sup) << ',' << fmt(e.l2) << ','
          << slope << ',' << o.classification.verdict << '\n';
  }
  return out.str();
}

std::string outcomes_json(const RunResult& r, const std::optional<std::string>& timestamp) {
  nlohmann::ordered_json j;
  if (timestamp) j["generated_at"] = *timestamp;
  j["ok"] = r.ok();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& o : r.outcomes) {
    nlohmann::ordered_json c;
    c["scenario"] = o.scenario;
    c["check"] = o.check;
    c["expect"] = to_string(o.expect);
    c["verdict"] = o.classification.verdict;
    c["ok"] = o.ok();
    if (o.classification.slope) c["slope"] = *o.classification.slope;
    if (!o.error.empty()) c["error"] = o.error;
    c["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : o.report.entries) c["entries"].push_back({{"h", e.h}, {"sup", e.sup}, {"l2", e.l2}});
    j["checks"].push_back(c);
  }
  return j.dump(1) + "\n";
}

std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

std::vector<std::string> fixture_listing() {
  std::vector<std::string> lines;
  for (const auto& name : surface_fixture_names()) {
    const SurfaceFixture fx = make_surface_fixture(name);
    lines.push_back("surface " + name + " " + fx.space.name());
  }
  for (const auto& name : algebra_fixture_names()) lines.push_back("algebra " + name);
  std::sort(lines.begin(), lines.end());
  return lines;
}

}  // namespace tlift
