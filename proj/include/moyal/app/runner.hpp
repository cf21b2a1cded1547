#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "moyal/app/checks.hpp"
#include "moyal/app/output.hpp"
#include "moyal/app/scenario.hpp"

namespace moyal::app {

std::string_view version();

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the scenario's seed
  bool plots = true;
  double tolerance_scale = 1.0;
};

struct RunResult {
  std::string scenario;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  Artifacts artifacts;  // data tables, plots and summary.json

  bool passed() const;
};

// Validates, then runs every analysis in file order. A library error inside
// an analysis becomes a failed check; validation problems throw.
RunResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

// Output directory when --out is not given: $MOYAL_OUT_DIR, else ./moyal-out.
std::filesystem::path default_output_dir();

// Directories searched for bundled scenarios: $MOYAL_SCENARIO_PATH (colon
// separated) followed by the install-time default.
std::vector<std::filesystem::path> scenario_search_path();

struct ScenarioEntry {
  std::string name;  // file stem
  std::filesystem::path file;
  std::string title;  // the scenario's name field, or the parse error
};
std::vector<ScenarioEntry> list_scenarios();

// A path to an existing file, or the stem of a bundled scenario.
std::optional<std::filesystem::path> resolve_scenario(std::string_view name_or_path);

}  // namespace moyal::app
