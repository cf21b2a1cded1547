#include "moyal/finite_difference.hpp"

#include <algorithm>
#include <array>

#include "moyal/error.hpp"
#include "moyal/grid.hpp"

namespace moyal {

namespace {

// Coefficients for offsets 1..r; first derivative is odd, second is even with c0.
constexpr std::array<std::array<double, 4>, 4> d1 = {{
    {1.0 / 2.0, 0, 0, 0},
    {2.0 / 3.0, -1.0 / 12.0, 0, 0},
    {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0, 0},
    {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0},
}};
constexpr std::array<double, 4> d2_center = {-2.0, -5.0 / 2.0, -49.0 / 18.0, -205.0 / 72.0};
constexpr std::array<std::array<double, 4>, 4> d2 = {{
    {1.0, 0, 0, 0},
    {4.0 / 3.0, -1.0 / 12.0, 0, 0},
    {3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0, 0},
    {8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0},
}};

}  // namespace

Derivative differentiate(std::span<const double> f, double h, int derivative_order,
                         const std::vector<std::uint8_t>& mask, int max_accuracy) {
  require(derivative_order == 1 || derivative_order == 2, ErrorCode::invalid_argument,
          "only first and second derivatives are supported");
  require(max_accuracy >= 2 && max_accuracy <= 8 && max_accuracy % 2 == 0,
          ErrorCode::invalid_argument, "accuracy order must be 2, 4, 6 or 8");
  require(mask.size() == f.size(), ErrorCode::invalid_argument, "mask length mismatch");
  const std::size_t n = f.size();
  Derivative out{std::vector<double>(n, 0.0), std::vector<std::uint8_t>(n, 0),
                 std::vector<int>(n, 0)};
  const double scale = derivative_order == 1 ? 1.0 / h : 1.0 / (h * h);
  const std::size_t rmax = static_cast<std::size_t>(max_accuracy / 2);
  for (const auto& [b, e] : mask_runs(mask)) {
    for (std::size_t i = b; i < e; ++i) {
      const std::size_t room = std::min(i - b, e - 1 - i);
      const std::size_t r = std::min(room, rmax);
      if (r == 0) continue;
      const auto& c = derivative_order == 1 ? d1[r - 1] : d2[r - 1];
      double acc = derivative_order == 1 ? 0.0 : d2_center[r - 1] * f[i];
      for (std::size_t k = 1; k <= r; ++k) {
        acc += derivative_order == 1 ? c[k - 1] * (f[i + k] - f[i - k])
                                     : c[k - 1] * (f[i + k] + f[i - k]);
      }
      out.values[i] = acc * scale;
      out.valid[i] = 1;
      out.order[i] = static_cast<int>(2 * r);
    }
  }
  return out;
}

}  // namespace moyal
