#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tlift/grid.hpp"

namespace tlift {

struct ResidualEntry {
  double h = 0;
  double sup = 0;
  double l2 = 0;
};

/// Sup / RMS norms of a residual over the interior mask, one entry per grid.
struct ResidualReport {
  std::string name;
  std::vector<ResidualEntry> entries;

  /// Least-squares slope of log(sup) against log(h); only with >= 3 rungs.
  std::optional<double> estimated_order() const;

  double final_sup() const { return entries.empty() ? 0.0 : entries.back().sup; }
  double max_sup() const;
  double min_sup() const;

  /// Appends the entries of another report (same quantity, further rungs).
  void extend(const ResidualReport& other);

  std::string to_csv() const;  // header "name,h,sup,l2"
  std::string to_json() const;
};

/// Norms of per-point magnitudes over the grid's interior mask.
ResidualReport measure(const std::string& name, const SurfaceGrid& grid, const Field<double>& pointwise);

/// Runs `one_grid(n)` for each rung and concatenates the entries.
ResidualReport run_ladder(const std::string& name, const std::vector<int>& ladder,
                          const std::function<ResidualReport(int)>& one_grid);

enum class Expectation { Converge, StayLarge, Exact };

Expectation parse_expectation(const std::string& s);  // throws ParseError
std::string to_string(Expectation e);

struct ClassifierThresholds {
  double min_slope = 1.5;
  double converge_sup = 1e-3;
  double stay_large_sup = 1e-2;
  double exact_sup = 1e-10;
  double scale = 1.0;
};

struct Classification {
  std::string verdict;  // "exact", "converge", "stay_large", "inconclusive"
  std::optional<double> slope;
  bool ok = false;
};

/// exact: every rung <= exact_sup*scale. converge: slope >= min_slope and the
/// final sup <= converge_sup*scale. stay_large: every rung >= stay_large_sup*scale.
/// Exact results also satisfy a Converge expectation.
Classification classify(const ResidualReport& r, Expectation expect, const ClassifierThresholds& t = {});

}  // namespace tlift
