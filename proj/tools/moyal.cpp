// Command-line front end: run scenarios, run invariant suites.
#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "moyal/app/checks.hpp"
#include "moyal/app/runner.hpp"
#include "moyal/app/scenario.hpp"
#include "moyal/error.hpp"

namespace {

namespace fs = std::filesystem;
using namespace moyal::app;

enum Exit { ok = 0, check_failed = 1, validation = 2, internal = 3 };

void print_checks(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    fmt::print("{} {} (value {}, {} {})\n", c.pass ? "PASS" : "FAIL", c.name, c.value, c.relation, c.tolerance);
}

int do_run(const std::string& file, const std::string& out, std::optional<std::uint64_t> seed, bool no_plots,
           double scale) {
  const auto path = resolve_scenario(file);
  if (!path) throw ValidationError(file, "no such scenario file or bundled scenario");
  const Scenario s = load_scenario(*path);
  RunOptions opt;
  opt.seed = seed;
  opt.plots = !no_plots;
  opt.tolerance_scale = scale;
  const RunResult r = run_scenario(s, opt);
  const fs::path dir = out.empty() ? default_output_dir() / path->stem() : fs::path(out);
  r.artifacts.write(dir);
  print_checks(r.checks);
  fmt::print("{}: {} of {} checks passed; outputs in {}\n", s.name,
             std::count_if(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.pass; }), r.checks.size(),
             dir.string());
  return r.passed() ? ok : check_failed;
}

int do_check(const std::string& suite, const std::string& out, double scale) {
  const SuiteReport rep = run_suite(suite, scale);
  const std::string text = to_json_text(rep);
  std::cout << text;
  if (!out.empty()) {
    fs::create_directories(out);
    std::ofstream f(fs::path(out) / ("check-" + suite + ".json"), std::ios::binary);
    f << text;
    if (!f) throw std::runtime_error("cannot write report to " + out);
  }
  return rep.passed() ? ok : check_failed;
}

int do_list() {
  const auto entries = list_scenarios();
  if (entries.empty()) {
    fmt::print(stderr, "no bundled scenarios found (set MOYAL_SCENARIO_PATH)\n");
    return ok;
  }
  for (const auto& e : entries) fmt::print("{:<24} {}\n", e.name, e.title);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-space quantum mechanics workbench"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string file, suite, out;
  std::uint64_t seed = 0;
  bool no_plots = false;
  double scale = 1.0;

  auto* run = app.add_subcommand("run", "Run a scenario file (or bundled scenario name)");
  run->add_option("file", file, "Scenario file")->required();
  run->add_option("--out", out, "Output directory (default $MOYAL_OUT_DIR/<name> or moyal-out/<name>)");
  auto* seed_opt = run->add_option("--seed", seed, "Override the scenario seed");
  run->add_flag("--no-plots", no_plots, "Skip SVG plots");
  run->add_option("--tolerance-scale", scale, "Multiply every check tolerance")->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "Run an invariant suite and print a JSON report");
  check->add_option("suite", suite, "Suite name")->required();
  check->add_option("--out", out, "Also write check-<suite>.json here");
  check->add_option("--tolerance-scale", scale, "Multiply every check tolerance")->check(CLI::PositiveNumber);

  auto* list = app.add_subcommand("list-scenarios", "List bundled scenarios");
  auto* ver = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return validation;
  }

  try {
    if (*run) return do_run(file, out, *seed_opt ? std::optional<std::uint64_t>(seed) : std::nullopt, no_plots, scale);
    if (*check) return do_check(suite, out, scale);
    if (*list) return do_list();
    if (*ver) {
      fmt::print("moyal {}\n", version());
      return ok;
    }
  } catch (const ValidationError& e) {
    fmt::print(stderr, "validation error: {}\n", e.what());
    return validation;
  } catch (const moyal::Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return internal;
  } catch (const std::exception& e) {
    fmt::print(stderr, "internal error: {}\n", e.what());
    return internal;
  }
  return internal;
}
