#pragma once

// Hand-rolled random generators for property tests. Every generator takes an
// explicit engine so a failing case can be replayed from its seed.

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "moyal/clifford.hpp"
#include "moyal/grid.hpp"
#include "moyal/poly_symbol.hpp"

namespace gen {

using Engine = std::mt19937_64;

inline double uniform(Engine& e, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(e); }
inline int integer(Engine& e, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(e); }

// Superposition of 1..max_terms Gaussians kept well inside the grid: centres
// within +-range, momenta within +-pmax, widths in [0.6, 1.4].
inline moyal::Wavefunction superposition(Engine& e, const moyal::Grid& g, const moyal::PhysicsConfig& cfg,
                                         int max_terms = 5, double range = 3.0, double pmax = 1.5) {
  std::vector<std::pair<moyal::cplx, moyal::Wavefunction>> terms;
  const int k = integer(e, 1, max_terms);
  for (int i = 0; i < k; ++i) {
    const moyal::cplx c(uniform(e, -1, 1), uniform(e, -1, 1));
    terms.emplace_back(c, moyal::gaussian_packet(g, uniform(e, -range, range), uniform(e, -pmax, pmax),
                                                 uniform(e, 0.6, 1.4), cfg));
  }
  return moyal::superpose(terms);
}

// Small rational with numerator in [-4, 4] and denominator in [1, 3].
inline moyal::Rational small_rational(Engine& e) { return moyal::Rational(integer(e, -4, 4), integer(e, 1, 3)); }

// Polynomial in x, p with up to `terms` monomials of total degree <= max_degree
// and exact complex-rational coefficients.
inline moyal::PolySymbol polynomial(Engine& e, int max_degree, double hbar, int terms = 4, bool real = false) {
  moyal::PolySymbol out(hbar);
  for (int i = 0; i < terms; ++i) {
    const int dx = integer(e, 0, max_degree);
    const int dp = integer(e, 0, max_degree - dx);
    const moyal::ExactComplex c{small_rational(e), real ? moyal::Rational(0) : small_rational(e)};
    out = out + moyal::PolySymbol::monomial(dx, dp, c, hbar);
  }
  return out;
}

inline moyal::Multivector multivector(Engine& e, const moyal::Signature& sig, int terms = 4) {
  moyal::Multivector out(sig);
  const int blades = 1 << sig.dimension();
  for (int i = 0; i < terms; ++i)
    out = out + moyal::Multivector::blade(sig, static_cast<moyal::Multivector::Blade>(integer(e, 0, blades - 1)),
                                          small_rational(e));
  return out;
}

}  // namespace gen
