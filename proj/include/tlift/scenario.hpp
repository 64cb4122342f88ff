#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tlift/linalg.hpp"
#include "tlift/report.hpp"

namespace tlift {

struct CheckSpec {
  std::string name;
  std::optional<Expectation> expect;  // overrides the scenario expectation
};

/// One declarative run: a fixture surface, its model space, a refinement ladder
/// and named checks with expected classifications.
struct Scenario {
  std::string name;
  std::string fixture;
  nlohmann::json params = nlohmann::json::object();
  std::optional<std::string> model_space;
  std::vector<int> ladder{32, 64, 128};
  std::vector<CheckSpec> checks;
  std::vector<cplx> lambda_samples;  // empty: default 24 samples
  Expectation expect = Expectation::Converge;
  ClassifierThresholds thresholds;
  std::string lift = "plus";  // plus, minus, anti
};

/// Accepts one scenario object, an array, or {"scenarios": [...]}.
/// Throws ParseError, UnknownFixture or UnknownCheck.
std::vector<Scenario> parse_scenarios(const std::string& json_text);

struct CheckOutcome {
  std::string scenario;
  std::string check;
  Expectation expect = Expectation::Converge;
  ResidualReport report;
  Classification classification;
  std::string error;  // non-empty when the check threw

  bool ok() const { return error.empty() && classification.ok; }
};

struct RunResult {
  std::vector<CheckOutcome> outcomes;
  bool ok() const;
};

RunResult run_scenario(const Scenario& s);
RunResult run_scenarios(const std::vector<Scenario>& all);

/// Columns: scenario, check, h, sup, l2, slope, verdict (one row per rung).
std::string outcomes_csv(const RunResult& r);
std::string outcomes_json(const RunResult& r, const std::optional<std::string>& timestamp);

/// Sorted check names.
std::vector<std::string> check_names();

/// "surface <kind> <model space>" and "algebra <name>" lines, sorted.
std::vector<std::string> fixture_listing();

}  // namespace tlift
