#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "moyal/dynamics.hpp"
#include "moyal/grid.hpp"

namespace moyal::app {

// Scenario problem located by a dotted field path such as "state.sigma" or
// "analysis[1].shadow.levels".
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct GridSpec {
  std::size_t n = 0;
  bool self_dual = false;
  double x_min = 0.0, x_max = 0.0;

  Grid build(double hbar) const;
};

struct StateSpec {
  enum class Kind { gaussian, cat, two_slit };
  Kind kind = Kind::gaussian;
  double x0 = 0.0;       // gaussian center, cat half-separation
  double p0 = 0.0;       // gaussian and cat momentum
  double sigma = 1.0;
  double weight = 1.0;   // cat: amplitude of the +x0 component
  double phase = 0.0;    // cat: relative phase of the +x0 component
  double separation = 0.0;
  double forward_momentum = 0.0;
};

struct PotentialSpec {
  Potential::Kind kind = Potential::Kind::free;
  double omega = 0.0;
  std::vector<double> values;
};

struct EvolutionSpec {
  double dt = 0.0;
  std::size_t steps = 0;
  std::size_t record_every = 1;
};

struct Analysis {
  enum class Kind { wigner, fields, trajectories, shadow, brackets, clifford_demo };
  Kind kind = Kind::wigner;
  // trajectories
  std::size_t paths = 100;
  std::size_t density_paths = 1000;
  // shadow
  double theta1 = 0.0, theta2 = 1.5707963267948966;
  std::vector<double> levels{0.1, 0.25, 0.5, 0.75, 0.9};
  std::string expect = "report";  // converge | diverge | report
  // brackets
  std::string a = "x^3", b = "p^3";
  std::vector<double> hbar_sweep{0.5, 0.25, 0.125};
  std::size_t grid_n = 128;
};

std::string_view to_string(Analysis::Kind kind);

struct Scenario {
  std::string name;
  PhysicsConfig physics;
  std::optional<GridSpec> grid;
  std::optional<StateSpec> state;
  std::optional<PotentialSpec> potential;
  std::optional<EvolutionSpec> evolution;
  std::vector<Analysis> analyses;
  std::uint64_t seed = 0;

  bool needs(Analysis::Kind kind) const;
};

// Parses the YAML scenario text; structural problems (unknown keys, wrong
// types, missing fields) raise ValidationError.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& file);

// Checks every module precondition reachable from the scenario before any
// work is done (builds the grid, the state and the potential to do so).
void validate(const Scenario& scenario);

Grid build_grid(const Scenario& scenario);
Wavefunction build_state(const Scenario& scenario);
Potential build_potential(const Scenario& scenario);

}  // namespace moyal::app
