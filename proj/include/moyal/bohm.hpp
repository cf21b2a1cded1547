#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "moyal/grid.hpp"

namespace moyal {

struct ConditionalField {
  Domain domain;
  double origin = 0.0;
  double spacing = 0.0;
  std::vector<double> values;
  std::vector<double> density;
  std::vector<std::uint8_t> valid;
  // Largest disagreement between the two computation routes on the valid set
  // (NaN when a single route was used).
  double route_gap = std::numeric_limits<double>::quiet_NaN();

  std::size_t size() const noexcept { return values.size(); }
  double coordinate(std::size_t i) const noexcept { return origin + static_cast<double>(i) * spacing; }
};

struct ScalarField {
  double origin = 0.0;
  double spacing = 0.0;
  std::vector<double> values;
  std::vector<std::uint8_t> valid;

  std::size_t size() const noexcept { return values.size(); }
  double coordinate(std::size_t i) const noexcept { return origin + static_cast<double>(i) * spacing; }
  double max_abs() const;  // over valid points
};

// p(x) = hbar Im(psi* psi') / |psi|^2 with a spectral derivative, cross-checked
// against the first p-moment of the Wigner function (skipped when cross_check
// is false, which leaves route_gap as NaN). Mask: |psi|^2 >= floor.
ConditionalField conditional_momentum(const Wavefunction& wf, double density_floor = -1.0,
                                      bool cross_check = true);

struct PhaseGradientOptions {
  // Stencil points whose second phase difference exceeds this (in units of
  // hbar) are treated as unresolved and drop every derivative that uses them.
  double curvature_limit = 0.005;
  int accuracy = 8;
};

inline constexpr std::size_t default_refine = 4;

// dS/dx on the unwrapped phase, reported on the original (unrefined) samples.
// Throws mask_too_fragmented when no valid run has at least 5 points.
ConditionalField guidance_from_phase(const PolarFields& polar, const PhaseGradientOptions& opts = {});

// x(p) = -dS_p/dp for a momentum-space state, cross-checked against the
// x-moment of the Wigner function at fixed p.
ConditionalField conditional_position(const Wavefunction& phi, double density_floor = -1.0,
                                      std::size_t refine = default_refine,
                                      const PhaseGradientOptions& opts = {});

// Q = -(hbar^2 / 2m) R'' / R on the polar sample points; masked where R is
// below the floor or the stencil does not fit.
ScalarField quantum_potential(const PolarFields& polar, const PhysicsConfig& config);

struct QhjResult {
  std::vector<double> times;           // interior slices
  std::vector<ScalarField> residuals;  // one per interior slice
  double max_abs = 0.0;
};

// dS/dt + (dS/dx)^2 / 2m + V + Q on every interior slice of a uniformly spaced
// series. dS/dt is a central difference of the phase of slices t +- dt taken
// relative to slice t pointwise; if that relative phase jumps by more than pi
// between neighbouring samples the branch is ambiguous and unwrap_discontinuity
// is thrown.
QhjResult qhj_residual(const TimeSeries& series, const std::vector<double>& potential,
                       const PhysicsConfig& config, double density_floor = -1.0);

// d rho / dt + d/dx (rho p / m) at interior slice i (central difference in t,
// spectral in x).
ScalarField continuity_residual(const TimeSeries& series, std::size_t slice);

// Phase-gradient field of polar fields with an overall sign, on unrefined samples.
ConditionalField phase_gradient(const PolarFields& polar, double sign, const PhaseGradientOptions& opts);

// Spectral first derivative of periodic samples on a uniform grid of the given
// period.
std::vector<cplx> spectral_derivative(const std::vector<cplx>& f, double period);

}  // namespace moyal
