#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "moyal/app/runner.hpp"

struct DetResult {
  bool identical;
  std::string detail;
};

// Runs the bundled two-slit scenario twice, writes both artifact sets to disk
// and compares every file byte for byte after reading it back.
inline DetResult acceptance_determinism() {
  namespace fs = std::filesystem;
  using namespace moyal::app;
  const Scenario s = load_scenario(MOYAL_DETERMINISM_SCENARIO);
  const fs::path root = fs::temp_directory_path() / ("moyal-determinism-" + std::to_string(::getpid()));
  const fs::path dirs[2] = {root / "a", root / "b"};
  for (const auto& d : dirs) run_scenario(s).artifacts.write(d);

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  std::size_t files = 0, bytes = 0;
  std::string mismatch;
  for (const auto& entry : fs::directory_iterator(dirs[0])) {
    const auto name = entry.path().filename();
    const std::string a = slurp(entry.path());
    if (!fs::exists(dirs[1] / name) || slurp(dirs[1] / name) != a) mismatch += " " + name.string();
    ++files;
    bytes += a.size();
  }
  for (const auto& entry : fs::directory_iterator(dirs[1]))
    if (!fs::exists(dirs[0] / entry.path().filename())) mismatch += " " + entry.path().filename().string();
  fs::remove_all(root);
  if (files == 0) return {false, "no artifacts written"};
  if (!mismatch.empty()) return {false, "differing files:" + mismatch};
  return {true, s.name + ": " + std::to_string(files) + " files, " + std::to_string(bytes) + " bytes identical"};
}
