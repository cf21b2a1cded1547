#pragma once

#include <optional>
#include <string>
#include <vector>

#include "moyal/clifford.hpp"

namespace moyal {

// Succession arrow [T_source, T_target] over a declared finite label set
// T_0 .. T_{n-1}.
struct Arrow {
  int source = 0;
  int target = 0;
  bool operator==(const Arrow&) const = default;
};

class LabelSet {
 public:
  explicit LabelSet(int count);
  int count() const noexcept { return count_; }
  Arrow arrow(int source, int target) const;  // validates labels

 private:
  int count_;
};

// [Ti, Tj] o [Tk, Tl] = [Ti, Tl] when j == k, otherwise no arrow.
std::optional<Arrow> arrow_compose(const Arrow& a, const Arrow& b);

std::string to_string(const Arrow& a);

// Image of an arrow in Cl(n, 0): [Ti, Tj] -> f(i) f(j) with f(0) = 1 and
// f(i) = e_i, so composable products multiply to the image of the composite
// (e_j^2 = 1) and the alternating products of distinct arrows anticommute.
Multivector arrow_image(const Arrow& a, int generators);

}  // namespace moyal
