#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tlift/error.hpp"
#include "tlift/scenario.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int run(const std::string& file, const std::string& out_dir, bool deterministic) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << file << "\n";
    return kExitUsage;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  std::vector<tlift::Scenario> scenarios;
  try {
    scenarios = tlift::parse_scenarios(buf.str());
  } catch (const tlift::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const tlift::RunResult result = tlift::run_scenarios(scenarios);
  try {
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "report.csv", tlift::outcomes_csv(result));
    const std::optional<std::string> stamp = deterministic ? std::nullopt : std::optional(utc_timestamp());
    write_file(fs::path(out_dir) / "report.json", tlift::outcomes_json(result, stamp));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  for (const auto& o : result.outcomes) {
    std::cout << (o.ok() ? "ok   " : "FAIL ") << o.scenario << " " << o.check << " expect=" << tlift::to_string(o.expect)
              << " verdict=" << o.classification.verdict;
    if (!o.error.empty()) std::cout << " (" << o.error << ")";
    std::cout << "\n";
  }
  if (result.ok()) return kExitOk;
  std::cerr << "CheckFailed: at least one check missed its expectation\n";
  return kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residual and convergence checks for twistor lifts and elliptic integrable systems"};
  app.require_subcommand(1, 1);

  std::string file;
  std::string out_dir = ".";
  bool deterministic = false;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a scenario file and write report.csv and report.json");
  run_cmd->add_option("file", file, "Scenario JSON file")->required();
  run_cmd->add_option("--out", out_dir, "Output directory");
  run_cmd->add_flag("--deterministic", deterministic, "Omit the timestamp so reports are byte-stable");

  CLI::App* fixtures_cmd = app.add_subcommand("list-fixtures", "List surface and algebra fixtures");
  CLI::App* checks_cmd = app.add_subcommand("list-checks", "List check names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  if (*fixtures_cmd) {
    for (const auto& line : tlift::fixture_listing()) std::cout << line << "\n";
    return kExitOk;
  }
  if (*checks_cmd) {
    for (const auto& name : tlift::check_names()) std::cout << name << "\n";
    return kExitOk;
  }
  if (*run_cmd) return run(file, out_dir, deterministic);
  return kExitUsage;
}
