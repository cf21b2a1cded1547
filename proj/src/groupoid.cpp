#include "moyal/groupoid.hpp"

#include "moyal/error.hpp"

namespace moyal {

LabelSet::LabelSet(int count) : count_(count) {
  require(count >= 1, ErrorCode::invalid_argument, "label set must be non-empty");
}

Arrow LabelSet::arrow(int source, int target) const {
  require(source >= 0 && source < count_ && target >= 0 && target < count_, ErrorCode::invalid_argument,
          "arrow label outside the declared set");
  return {source, target};
}

std::optional<Arrow> arrow_compose(const Arrow& a, const Arrow& b) {
  if (a.target != b.source) return std::nullopt;
  return Arrow{a.source, b.target};
}

std::string to_string(const Arrow& a) {
  return "[T" + std::to_string(a.source) + ",T" + std::to_string(a.target) + "]";
}

Multivector arrow_image(const Arrow& a, int generators) {
  const Signature sig{generators, 0};
  require(a.source >= 0 && a.source <= generators && a.target >= 0 && a.target <= generators,
          ErrorCode::invalid_argument, "arrow label has no generator");
  auto f = [&](int i) { return i == 0 ? Multivector::scalar(sig, 1) : Multivector::generator(sig, i); };
  return f(a.source) * f(a.target);
}

}  // namespace moyal
