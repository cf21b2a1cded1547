#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "moyal/phase_space.hpp"
#include "moyal/poly_symbol.hpp"

namespace moyal {

using Matrix = Eigen::MatrixXcd;

// Dense matrix in the first N harmonic-oscillator eigenstates (unit mass and
// frequency, configured hbar).
struct Operator {
  Matrix matrix;
  PhysicsConfig config;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
  bool is_hermitian(double tol = 1e-10) const;
};

struct DensityOperator {
  Operator op;

  // Checks trace one and positive semidefiniteness; throws invalid_argument.
  explicit DensityOperator(Operator rho);
  const Matrix& matrix() const noexcept { return op.matrix; }
  std::size_t dim() const noexcept { return op.dim(); }
  const PhysicsConfig& config() const noexcept { return op.config; }

  double idempotency_defect() const;  // ||rho^2 - rho||_F
  bool is_pure(double tol = 1e-8) const { return idempotency_defect() < tol; }
};

// X = sqrt(hbar/2)(a + a^dag), P = -i sqrt(hbar/2)(a - a^dag)
std::pair<Operator, Operator> canonical_pair(std::size_t N, const PhysicsConfig& config);

// Faithful-range heuristic for an N-level truncation: alpha^2 + beta^2 <= N hbar / 4.
double faithful_radius(std::size_t N, double hbar);
bool in_faithful_range(double alpha, double beta, std::size_t N, double hbar);

// S(alpha, beta) = exp[i (alpha P + beta X) / hbar]; alpha translates position by
// alpha and beta translates momentum by beta. Evaluated in a 2N-level basis
// through the spectrum of the rotated quadrature and truncated to N.
Operator displacement(double alpha, double beta, std::size_t N, const PhysicsConfig& config);

// Weyl (symmetric) ordering; McCoy's form x^a p^b -> 2^-a sum_k C(a,k) X^k P^b X^(a-k),
// built in an (N + degree)-level basis and truncated. Degree is limited to 4.
Operator weyl_quantize(const PolySymbol& symbol, std::size_t N, const PhysicsConfig& config);

// A = double integral a~(alpha,beta) S(alpha,beta) dalpha dbeta over the faithful disk,
// a~ = (2 pi hbar)^-2 * double integral a(x,p) exp(-i(alpha p + beta x)/hbar) dx dp.
// Throws band_limit if a~ carries more than weyl_band_tolerance of its energy
// outside the disk.
inline constexpr double weyl_band_tolerance = 1e-10;
Operator weyl_quantize(const PhaseSpaceFunction& symbol, std::size_t N);

// Symbol a(x,p) = integral <x + y/2|A|x - y/2> exp(-i p y / hbar) dy, evaluated from
// the position kernel in the Hermite-function basis. Throws support when more
// than weyl_support_tolerance of A's Frobenius mass lies outside the leading
// half-block (truncation artefacts would dominate the symbol).
inline constexpr double weyl_support_tolerance = 1e-6;
PhaseSpaceFunction weyl_symbol(const Operator& A, const Grid& grid);

// Wigner function of rho = weyl_symbol(rho) / (2 pi hbar).
PhaseSpaceFunction wigner_of(const DensityOperator& rho, const Grid& grid);

struct PhasePoint {
  double alpha;
  double beta;
};

// Tr[rho S(alpha, beta)] at each point.
std::vector<cplx> char_via_trace(const DensityOperator& rho, const std::vector<PhasePoint>& points);

// Grid (alpha_l, beta_m) index pairs, in CharacteristicFunction layout, that
// lie inside the faithful disk.
std::vector<std::pair<std::size_t, std::size_t>> faithful_indices(const Grid& grid, std::size_t N);

struct ExpectationPair {
  double phase_space;  // double integral a * W_rho
  double trace;        // Tr[rho A]
};

ExpectationPair expectation_cross_check(const PolySymbol& a, const DensityOperator& rho,
                                        const Grid& grid);
ExpectationPair expectation_cross_check(const PhaseSpaceFunction& a, const DensityOperator& rho);

// Hermite functions h_0..h_{N-1} (unit mass and frequency) sampled at xs; row i, column n.
Eigen::MatrixXd hermite_functions(const std::vector<double>& xs, std::size_t N, double hbar);

// Projection of a position-space wavefunction onto the first N levels; throws
// support if more than 1e-8 of the norm is lost.
DensityOperator density_from_wavefunction(const Wavefunction& wf, std::size_t N);

// |coherent(q,p)><coherent(q,p)| directly from ladder-basis amplitudes.
DensityOperator coherent_density(double q, double p, std::size_t N, const PhysicsConfig& config);

}  // namespace moyal
