#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "moyal/grid.hpp"

namespace moyal {

// Samples on the (x_j, p_k) product of a grid and its dual, stored row-major
// with index j*n + k (x major).
template <typename T>
class BasicPhaseSpaceFunction {
 public:
  BasicPhaseSpaceFunction(Grid grid, PhysicsConfig config, std::vector<T> values)
      : grid_(std::move(grid)), config_(config), values_(std::move(values)) {
    check_shape();
  }

  static BasicPhaseSpaceFunction sample(const Grid& grid, const PhysicsConfig& config,
                                        const std::function<T(double, double)>& fn) {
    const std::size_t n = grid.n();
    std::vector<T> v(n * n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) v[j * n + k] = fn(grid.x(j), grid.p(k));
    return {grid, config, std::move(v)};
  }

  const Grid& grid() const noexcept { return grid_; }
  const PhysicsConfig& config() const noexcept { return config_; }
  const std::vector<T>& values() const noexcept { return values_; }
  std::size_t n() const noexcept { return grid_.n(); }
  T operator()(std::size_t j, std::size_t k) const noexcept { return values_[j * grid_.n() + k]; }

 private:
  void check_shape() const;

  Grid grid_;
  PhysicsConfig config_;
  std::vector<T> values_;
};

using PhaseSpaceFunction = BasicPhaseSpaceFunction<double>;
using ComplexPhaseSpaceFunction = BasicPhaseSpaceFunction<cplx>;

// chi(alpha_l, beta_m) with alpha dual to p (alpha_l = (l - n/2) dx) and beta dual
// to x (beta_m = (m - n/2) dp); values stored with index l*n + m.
struct CharacteristicFunction {
  Grid grid;
  PhysicsConfig config;
  std::vector<cplx> values;

  std::size_t n() const noexcept { return grid.n(); }
  double alpha(std::size_t l) const noexcept {
    return (static_cast<double>(l) - 0.5 * static_cast<double>(grid.n())) * grid.dx();
  }
  double beta(std::size_t m) const noexcept { return grid.p(m); }
  cplx operator()(std::size_t l, std::size_t m) const noexcept { return values[l * grid.n() + m]; }
};

ComplexPhaseSpaceFunction to_complex(const PhaseSpaceFunction& f);

}  // namespace moyal
