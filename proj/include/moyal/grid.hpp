#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "moyal/fft.hpp"

namespace moyal {

struct PhysicsConfig {
  double hbar = 1.0;
  double mass = 1.0;

  void validate() const;
  bool operator==(const PhysicsConfig&) const = default;
};

// Uniform periodic grid x_j = x_min + j*dx, j in [0, n), with dx = (x_max - x_min)/n.
// The dual momentum grid is p_k = (k - n/2)*dp with dp = 2*pi*hbar/(n*dx).
class Grid {
 public:
  Grid(std::size_t n, double x_min, double x_max, double hbar = 1.0);

  // Centered grid with dx == dp, so the momentum grid coincides with the
  // position grid. Needed wherever x and p samples are compared directly.
  static Grid self_dual(std::size_t n, double hbar = 1.0);

  std::size_t n() const noexcept { return n_; }
  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  double length() const noexcept { return x_max_ - x_min_; }
  double dx() const noexcept { return dx_; }
  double dp() const noexcept { return dp_; }
  double hbar() const noexcept { return hbar_; }
  double p_max() const noexcept { return 0.5 * static_cast<double>(n_) * dp_; }

  double x(std::size_t j) const noexcept { return x_min_ + static_cast<double>(j) * dx_; }
  double p(std::size_t k) const noexcept {
    return (static_cast<double>(k) - 0.5 * static_cast<double>(n_)) * dp_;
  }
  std::vector<double> positions() const;
  std::vector<double> momenta() const;

  bool operator==(const Grid& other) const noexcept;

 private:
  std::size_t n_;
  double x_min_, x_max_, dx_, dp_, hbar_;
};

struct Domain {
  enum class Kind { position, momentum, fractional };
  Kind kind = Kind::position;
  double theta = 0.0;  // only meaningful for fractional

  static Domain position() { return {Kind::position, 0.0}; }
  static Domain momentum() { return {Kind::momentum, 0.0}; }
  static Domain fractional(double theta) { return {Kind::fractional, theta}; }
  bool operator==(const Domain&) const = default;
};

// Amplitudes sampled on the position grid, the dual momentum grid, or (for a
// fractional domain) the position grid reused as the rotated coordinate.
class Wavefunction {
 public:
  Wavefunction(Grid grid, PhysicsConfig config, std::vector<cplx> amplitudes,
               Domain domain = Domain::position());

  const Grid& grid() const noexcept { return grid_; }
  const PhysicsConfig& config() const noexcept { return config_; }
  const std::vector<cplx>& amplitudes() const noexcept { return amp_; }
  const Domain& domain() const noexcept { return domain_; }
  std::size_t size() const noexcept { return amp_.size(); }
  cplx operator[](std::size_t i) const noexcept { return amp_[i]; }

  double spacing() const noexcept;
  double coordinate(std::size_t i) const noexcept;
  std::vector<double> coordinates() const;
  std::vector<double> density() const;

  double norm_squared() const;
  Wavefunction normalized() const;
  cplx inner(const Wavefunction& other) const;  // <this|other>

  double mean_coordinate() const;
  double variance_coordinate() const;

 private:
  Grid grid_;
  PhysicsConfig config_;
  std::vector<cplx> amp_;
  Domain domain_;
};

// psi ~ exp(-(x - x0)^2 / (2 sigma^2) + i p0 x / hbar), normalized on the grid.
Wavefunction gaussian_packet(const Grid& grid, double x0, double p0, double sigma,
                             const PhysicsConfig& config = {});

Wavefunction superpose(const std::vector<std::pair<cplx, Wavefunction>>& terms);

// phi(p) = (2 pi hbar)^{-1/2} * integral exp(-i p x / hbar) psi(x) dx
Wavefunction to_momentum(const Wavefunction& wf);
Wavefunction from_momentum(const Wavefunction& phi);

// States sampled at increasing times (one Wavefunction per slice).
struct TimeSeries {
  std::vector<double> times;
  std::vector<Wavefunction> states;

  std::size_t size() const noexcept { return states.size(); }
};

struct PolarFields {
  Domain domain;
  double origin = 0.0;   // coordinate of sample 0
  double spacing = 0.0;  // sample spacing (grid spacing / refine)
  std::size_t refine = 1;
  double hbar = 1.0;
  std::vector<double> amplitude;  // R
  std::vector<double> phase;      // S, action units
  std::vector<std::uint8_t> valid;

  std::size_t size() const noexcept { return amplitude.size(); }
  double coordinate(std::size_t i) const noexcept {
    return origin + static_cast<double>(i) * spacing;
  }
};

inline constexpr double default_floor_ratio = 1e-8;

// Extracts R and S with S unwrapped per maximal run where |psi|^2 >= floor.
// A floor <= 0 selects default_floor_ratio * max|psi|^2. With refine > 1 the
// amplitudes are band-limited upsampled first, which keeps phase increments
// between neighbours small enough to unwrap near deep minima.
PolarFields polar_decompose(const Wavefunction& wf, double density_floor = -1.0,
                            std::size_t refine = 1);

// Maximal runs [begin, end) of nonzero mask entries.
std::vector<std::pair<std::size_t, std::size_t>> mask_runs(const std::vector<std::uint8_t>& mask);

}  // namespace moyal
