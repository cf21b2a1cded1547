#pragma once

#include "moyal/grid.hpp"

// Closed-form solutions of the Schrodinger equation, sampled on a grid with
// their exact time-dependent phase (unnormalized on the grid, normalized on
// the line).
namespace moyal::analytic {

// Free packet that starts as exp(-(x - x0)^2 / (2 sigma^2) + i p0 x / hbar).
Wavefunction free_gaussian(const Grid& grid, const PhysicsConfig& config, double sigma, double x0, double p0,
                           double t);

// Coherent state of m omega^2 x^2 / 2 following the classical orbit from (q0, p0).
Wavefunction coherent(const Grid& grid, const PhysicsConfig& config, double omega, double q0, double p0, double t);

}  // namespace moyal::analytic
