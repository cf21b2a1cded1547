#pragma once

#include <vector>

#include "moyal/bohm.hpp"
#include "moyal/dynamics.hpp"

namespace moyal {

// Fractional Fourier transform F_theta = exp(-i theta N), N the oscillator
// number operator in units with m = omega = 1. F_{pi/2} is the momentum
// transform with kernel exp(-i p x / hbar) / sqrt(2 pi hbar) when the grid is
// self-dual. Evaluated as chirp * free flight * chirp (tan(theta/2), sin theta),
// split into halves when |theta| > pi/2. The output coordinate u reuses the
// position samples. Throws support if position or momentum mass beyond half of
// the smaller grid extent exceeds 1e-10 (chirp aliasing).
Wavefunction frft(const Wavefunction& wf, double theta);

inline constexpr double frft_tail_limit = 1e-10;

// Conditional mean of v = -x sin(theta) + p cos(theta) given
// u = x cos(theta) + p sin(theta): +dS_theta/du of frft(wf, theta).
// theta = 0 gives the guidance field; at theta = pi/2 the position estimate is
// x(p) = -value (the one sign map between the two conventions).
ConditionalField shadow_field(const Wavefunction& wf, double theta, double density_floor = -1.0,
                              std::size_t refine = default_refine);

// du/dt for the rotated coordinate under H = p^2/2m + m omega^2 x^2 / 2, given the
// conditional field: cos(th)(u sin(th) + v cos(th))/m - m omega^2 sin(th)(u cos(th) - v sin(th)).
ScalarField shadow_velocity(const ConditionalField& field, double theta, double omega,
                            const PhysicsConfig& config);

struct DivergenceReport {
  double theta1 = 0.0;
  double theta2 = 0.0;
  std::vector<double> levels;            // quantile labels
  std::vector<double> times;             // path sample times
  TrajectoryEnsemble paths1, paths2;     // in u coordinates of each domain
  std::vector<std::vector<double>> z1;   // standardized chart per path and time
  std::vector<std::vector<double>> z2;
  double divergence = 0.0;               // max |z1 - z2|
};

// Streamlines in two fractional domains from equal-quantile starting points,
// compared in the standardized chart z = (u - mean_theta(t)) / std_theta(t).
// The series must come from free or harmonic evolution (V.kind). Throws
// chart_incompatibility if a path leaves the valid mask of its domain.
DivergenceReport streamline_divergence(const TimeSeries& series, const Potential& V, double theta1,
                                       double theta2, const std::vector<double>& levels);

}  // namespace moyal
