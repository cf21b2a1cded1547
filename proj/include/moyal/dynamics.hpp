#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "moyal/bohm.hpp"
#include "moyal/grid.hpp"

namespace moyal {

struct Potential {
  enum class Kind { free, harmonic, tabulated };
  Kind kind = Kind::free;
  double omega = 0.0;
  std::vector<double> values;

  static Potential free(const Grid& grid);
  static Potential harmonic(const Grid& grid, double omega, const PhysicsConfig& config);
  static Potential tabulated(const Grid& grid, std::vector<double> values);
};

// Probability in the outermost n/16 samples on each side.
double edge_mass(const Wavefunction& wf);
inline constexpr double edge_mass_limit = 1e-8;

double energy(const Wavefunction& wf, const Potential& V);

// Strang splitting exp(-iV dt/2h) exp(-iT dt/h) exp(-iV dt/2h) with the kinetic
// factor applied on the dual momentum grid. Records every `record_every`
// steps (and the initial state). Throws boundary_contact as soon as the edge
// mass exceeds edge_mass_limit.
TimeSeries split_step_evolve(const Wavefunction& wf0, const Potential& V, double dt, std::size_t steps,
                             std::size_t record_every = 1);

// Largest dt accepted by split_step_evolve: 0.1 m dx^2 / hbar.
double max_stable_dt(const Grid& grid, const PhysicsConfig& config);

// Equal-weight superposition of Gaussians at -d/2 and +d/2 with zero transverse
// momentum. The forward momentum only converts flight time into distance
// (z = p0 t / m) and is validated here so scenario files fail early.
Wavefunction two_slit_state(double separation, double sigma, double forward_momentum, const Grid& grid,
                            const PhysicsConfig& config);

struct TrajectoryEnsemble {
  std::vector<double> times;
  std::vector<std::vector<double>> paths;  // paths[i][t], ordered by initial coordinate
  std::vector<std::uint8_t> flagged;       // entered a masked region (held constant afterwards)
  std::vector<std::size_t> flagged_at;     // time index of the flag, times.size() if never
  std::string sampling;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return paths.size(); }
};

// Stratified inverse-CDF sample of `count` points from a density on uniform
// coordinates: u_i = (i + U_i) / count with U_i from a seeded generator.
std::vector<double> sample_from_density(const std::vector<double>& coords, const std::vector<double>& density,
                                        std::size_t count, std::uint64_t seed);
std::vector<double> quantiles_of_density(const std::vector<double>& coords, const std::vector<double>& density,
                                         const std::vector<double>& levels);

inline constexpr double undersample_limit = 0.1;

// RK4 through velocity fields given on slices; one step spans two slices so the
// midpoint evaluations land on a slice. Cubic (4-point) interpolation in space.
// Throws field_undersampled if the field at a path point changes by more than
// undersample_limit times the field scale between consecutive slices.
TrajectoryEnsemble integrate_paths(const std::vector<double>& times, const std::vector<ScalarField>& velocity,
                                   std::vector<double> x0);

// Velocity p(x,t)/m from the spectral guidance field of every slice.
std::vector<ScalarField> guidance_velocities(const TimeSeries& series);

TrajectoryEnsemble integrate_trajectories(const TimeSeries& series, std::vector<double> x0);

// Smallest x_{i+1}(t) - x_i(t) over adjacent paths and all times.
double min_adjacent_gap(const TrajectoryEnsemble& ensemble);

// Total-variation distance between the endpoint histogram at t_final and the
// bin masses of |psi(x, t_final)|^2 (64 bins over the central 1 - 2e-4 of the
// probability). Requires at least 100 paths.
double transported_density_check(const TrajectoryEnsemble& ensemble, const TimeSeries& series, double t_final,
                                 std::size_t bins = 64);

}  // namespace moyal
