#pragma once

#include <utility>
#include <vector>

#include "moyal/phase_space.hpp"

namespace moyal {

inline constexpr double wigner_imag_tolerance = 1e-8;

// W(x,p) = (2 pi hbar)^{-1} * integral psi*(x - y/2) psi(x + y/2) exp(-i p y / hbar) dy
// The half-step samples come from a band-limited 2x upsampling of psi.
PhaseSpaceFunction wigner_transform(const Wavefunction& wf);

struct Marginals {
  std::vector<double> position;  // integral over p
  std::vector<double> momentum;  // integral over x
};

Marginals marginals(const PhaseSpaceFunction& f);

// Sum of symbol * f * dx * dp (trapezoid rule on the periodic grid).
double expectation(const PhaseSpaceFunction& symbol, const PhaseSpaceFunction& f);

// chi(alpha, beta) = double integral f(x,p) exp(i (alpha p + beta x) / hbar) dx dp
CharacteristicFunction characteristic_function(const PhaseSpaceFunction& f);

// (2 pi hbar) * double integral f^2; equals 1 for pure states.
double purity(const PhaseSpaceFunction& f);

}  // namespace moyal
