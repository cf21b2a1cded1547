#include "moyal/analytic.hpp"

#include <cmath>
#include <numbers>

#include "moyal/error.hpp"

namespace moyal::analytic {

using std::numbers::pi;

Wavefunction free_gaussian(const Grid& grid, const PhysicsConfig& config, double sigma, double x0, double p0,
                           double t) {
  config.validate();
  require(sigma > 0.0, ErrorCode::invalid_argument, "sigma must be > 0");
  const double h = config.hbar, m = config.mass;
  const cplx spread(1.0, h * t / (m * sigma * sigma));
  const cplx pre = std::pow(pi * sigma * sigma, -0.25) / std::sqrt(spread);
  const double v = p0 / m;
  std::vector<cplx> a(grid.n());
  for (std::size_t j = 0; j < grid.n(); ++j) {
    const double x = grid.x(j), d = x - x0 - v * t;
    a[j] = pre * std::exp(-d * d / (2.0 * sigma * sigma * spread) + cplx(0.0, (p0 * x - 0.5 * p0 * v * t) / h));
  }
  return {grid, config, std::move(a)};
}

Wavefunction coherent(const Grid& grid, const PhysicsConfig& config, double omega, double q0, double p0, double t) {
  config.validate();
  require(omega > 0.0, ErrorCode::invalid_argument, "omega must be > 0");
  const double h = config.hbar, m = config.mass;
  const double c = std::cos(omega * t), s = std::sin(omega * t);
  const double q = q0 * c + p0 / (m * omega) * s;
  const double p = p0 * c - m * omega * q0 * s;
  const double pre = std::pow(m * omega / (pi * h), 0.25);
  // action of the classical orbit is (p q - p0 q0) / 2, plus the zero-point phase
  const double phase0 = -0.5 * omega * t - 0.5 * p0 * q0 / h;
  std::vector<cplx> a(grid.n());
  for (std::size_t j = 0; j < grid.n(); ++j) {
    const double x = grid.x(j), d = x - q;
    a[j] = pre * std::exp(cplx(-m * omega * d * d / (2.0 * h), p * (x - 0.5 * q) / h + phase0));
  }
  return {grid, config, std::move(a)};
}

}  // namespace moyal::analytic
