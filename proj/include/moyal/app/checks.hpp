#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace moyal::app {

// One pass/fail line item. relation is "<=", ">", ">=" or "==" (exact).
struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  std::string relation;
  bool pass = false;
  std::string detail;
};

// Upper bounds are multiplied by `scale` and lower bounds divided by it;
// exact checks ignore it.
Check check_at_most(std::string name, double value, double tolerance, double scale = 1.0);
Check check_above(std::string name, double value, double threshold, double scale = 1.0);
Check check_at_least(std::string name, double value, double threshold, double scale = 1.0);
Check check_exact(std::string name, bool holds, std::string detail = {});

struct SuiteReport {
  std::string suite;
  double tolerance_scale = 1.0;
  std::vector<Check> items;

  bool passed() const;
};

const std::vector<std::string>& suite_names();

// Throws ValidationError (path "suite") for an unknown name.
SuiteReport run_suite(std::string_view name, double tolerance_scale = 1.0);

std::vector<Check> clifford_items();

// Canonical JSON text (sorted keys, 2-space indent, trailing newline).
std::string to_json_text(const SuiteReport& report);

}  // namespace moyal::app
