#include "tlift/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace tlift {

void SurfaceGrid::validate() const {
  if (nu < 8 || nv < 8) throw Error(ErrorCode::GridTooSmall, "grid needs at least 8 points per direction");
  if (!(hu > 0) || !(hv > 0)) throw Error(ErrorCode::GridTooSmall, "grid spacings must be positive");
}

SurfaceGrid SurfaceGrid::periodic(int nu, int nv, double lu, double lv, double u0, double v0) {
  SurfaceGrid g;
  g.nu = nu;
  g.nv = nv;
  g.hu = lu / nu;
  g.hv = lv / nv;
  g.u0 = u0;
  g.v0 = v0;
  g.periodic_u = g.periodic_v = true;
  g.validate();
  return g;
}

SurfaceGrid SurfaceGrid::patch(int nu, int nv, double u0, double u1, double v0, double v1) {
  SurfaceGrid g;
  g.nu = nu;
  g.nv = nv;
  g.hu = nu > 1 ? (u1 - u0) / (nu - 1) : 0.0;
  g.hv = nv > 1 ? (v1 - v0) / (nv - 1) : 0.0;
  g.u0 = u0;
  g.v0 = v0;
  g.validate();
  return g;
}

std::optional<double> ResidualReport::estimated_order() const {
  if (entries.size() < 3) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(entries.size());
  for (const auto& e : entries) {
    const double x = std::log(e.h);
    const double y = std::log(std::max(e.sup, 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / den;
}

double ResidualReport::max_sup() const {
  double m = 0;
  for (const auto& e : entries) m = std::max(m, e.sup);
  return m;
}

double ResidualReport::min_sup() const {
  if (entries.empty()) return 0.0;
  double m = entries.front().sup;
  for (const auto& e : entries) m = std::min(m, e.sup);
  return m;
}

void ResidualReport::extend(const ResidualReport& other) {
  entries.insert(entries.end(), other.entries.begin(), other.entries.end());
}

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9e", x);
  return buf;
}

}  // namespace

std::string ResidualReport::to_csv() const {
  std::ostringstream out;
  out << "name,h,sup,l2\n";
  for (const auto& e : entries) out << name << ',' << fmt(e.h) << ',' << fmt(e.sup) << ',' << fmt(e.l2) << '\n';
  return out.str();
}

std::string ResidualReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : entries) j["entries"].push_back({{"h", e.h}, {"sup", e.sup}, {"l2", e.l2}});
  if (auto o = estimated_order()) j["estimated_order"] = *o;
  return j.dump(1);
}

ResidualReport measure(const std::string& name, const SurfaceGrid& grid, const Field<double>& pointwise) {
  double sup = 0, sq = 0;
  long count = 0;
  bool finite = true;
  for (int j = 0; j < grid.nv; ++j) {
    for (int i = 0; i < grid.nu; ++i) {
      if (!grid.interior(i, j)) continue;
      const double x = pointwise[static_cast<size_t>(grid.index(i, j))];
      finite = finite && std::isfinite(x);
      sup = std::max(sup, x);
      sq += x * x;
      ++count;
    }
  }
  ResidualReport r;
  r.name = name;
  const double l2 = count ? std::sqrt(sq / static_cast<double>(count)) : 0.0;
  if (finite) {
    r.entries.push_back({grid.h(), sup, l2});
  } else {
    r.entries.push_back({grid.h(), std::nan(""), std::nan("")});
  }
  return r;
}

ResidualReport run_ladder(const std::string& name, const std::vector<int>& ladder,
                          const std::function<ResidualReport(int)>& one_grid) {
  ResidualReport out;
  out.name = name;
  for (int n : ladder) out.extend(one_grid(n));
  return out;
}

Expectation parse_expectation(const std::string& s) {
  if (s == "converge") return Expectation::Converge;
  if (s == "stay_large") return Expectation::StayLarge;
  if (s == "exact") return Expectation::Exact;
  throw Error(ErrorCode::ParseError, "unknown expectation '" + s + "'");
}

std::string to_string(Expectation e) {
  switch (e) {
    case Expectation::Converge: return "converge";
    case Expectation::StayLarge: return "stay_large";
    case Expectation::Exact: return "exact";
  }
  return "?";
}

Classification classify(const ResidualReport& r, Expectation expect, const ClassifierThresholds& t) {
  Classification c;
  c.slope = r.estimated_order();
  if (r.entries.empty()) {
    c.verdict = "inconclusive";
    return c;
  }
  bool finite = true;
  for (const auto& e : r.entries) finite = finite && std::isfinite(e.sup);
  if (!finite) {
    c.verdict = "inconclusive";
    return c;
  }
  if (r.max_sup() <= t.exact_sup * t.scale) {
    c.verdict = "exact";
  } else if (c.slope && *c.slope >= t.min_slope && r.final_sup() <= t.converge_sup * t.scale) {
    c.verdict = "converge";
  } else if (r.min_sup() >= t.stay_large_sup * t.scale) {
    c.verdict = "stay_large";
  } else {
    c.verdict = "inconclusive";
  }
  switch (expect) {
    case Expectation::Exact: c.ok = c.verdict == "exact"; break;
    case Expectation::Converge: c.ok = c.verdict == "exact" || c.verdict == "converge"; break;
    case Expectation::StayLarge: c.ok = c.verdict == "stay_large"; break;
  }
  return c;
}

}  // namespace tlift
