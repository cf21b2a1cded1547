#pragma once

#include <cstdint>
#include <vector>

#include "moyal/phase_space.hpp"
#include "moyal/poly_symbol.hpp"

namespace moyal {

// a * exp[(i hbar / 2)(<-d_x ->d_p - <-d_p ->d_x)] * b, summed until the
// derivatives run out (exact for polynomials).
PolySymbol star_poly(const PolySymbol& a, const PolySymbol& b);

PolySymbol moyal_bracket(const PolySymbol& a, const PolySymbol& b);  // (a*b - b*a) / (i hbar)
PolySymbol baker_bracket(const PolySymbol& a, const PolySymbol& b);  // (a*b + b*a) / 2
PolySymbol poisson_bracket(const PolySymbol& a, const PolySymbol& b);

inline constexpr double band_limit_tolerance = 1e-8;

// Star product of sampled symbols as a twisted convolution. Writing
//   a(x,p) = sum_l a^(alpha_l, x) exp(i alpha_l p / hbar)
// (partial Fourier series over p), plane waves in p multiply as
//   (f(x) e^{i a1 p/hbar}) * (g(x) e^{i a2 p/hbar}) = f(x - a2/2) g(x + a1/2) e^{i(a1+a2)p/hbar},
// so (a*b)^(alpha, x) = sum_{a1} a^(a1, x - (alpha-a1)/2) b^(alpha-a1, x + a1/2).
// Half-step shifts in x come from a band-limited 2x upsampling. Both inputs must
// carry less than band_limit_tolerance of their spectral energy outside the
// central half of the dual grid in each direction.
ComplexPhaseSpaceFunction star_grid(const ComplexPhaseSpaceFunction& a,
                                    const ComplexPhaseSpaceFunction& b);

ComplexPhaseSpaceFunction moyal_bracket_grid(const ComplexPhaseSpaceFunction& a,
                                             const ComplexPhaseSpaceFunction& b);
ComplexPhaseSpaceFunction baker_bracket_grid(const ComplexPhaseSpaceFunction& a,
                                             const ComplexPhaseSpaceFunction& b);

// Fraction of spectral energy outside the central half of the dual grid.
double out_of_band_fraction(const ComplexPhaseSpaceFunction& a);

// Flat-topped window 1/2 [erf((u+c)/w) - erf((u-c)/w)] in x and p, centered on
// the grid, with c = 0.3 L, w = L/40 in x and c = 0.6 p_max, w = p_max/20 in p.
// Multiplying a polynomial by it makes the samples band-limited while leaving
// the central quarter of the grid untouched to double precision.
PhaseSpaceFunction plateau_window(const Grid& grid, const PhysicsConfig& config);

// Polynomial sampled on the grid and multiplied by plateau_window.
ComplexPhaseSpaceFunction sample_windowed(const PolySymbol& a, const Grid& grid,
                                          const PhysicsConfig& config);

// Mask of the central quarter |x - xc| <= L/8, |p| <= p_max/4 where windowed
// products are compared against the exact series.
std::vector<std::uint8_t> central_quarter(const Grid& grid);

}  // namespace moyal
