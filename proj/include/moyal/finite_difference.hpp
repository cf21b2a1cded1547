#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace moyal {

// Central finite differences on uniform samples restricted to masked runs.
// Each point uses the widest centered stencil (order 8, 6, 4, 2) that fits
// inside its run; points without even a 3-point stencil are marked invalid.
struct Derivative {
  std::vector<double> values;
  std::vector<std::uint8_t> valid;
  std::vector<int> order;  // accuracy order used per point, 0 if invalid
};

Derivative differentiate(std::span<const double> f, double h, int derivative_order,
                         const std::vector<std::uint8_t>& mask, int max_accuracy = 8);

// Half-width of the stencil for a given accuracy order (order/2).
inline std::size_t stencil_radius(int accuracy) { return static_cast<std::size_t>(accuracy / 2); }

}  // namespace moyal
