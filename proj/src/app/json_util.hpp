#pragma once

#include <nlohmann/json.hpp>

#include "moyal/app/checks.hpp"

namespace moyal::app {

// NaN and infinities have no JSON spelling; they become null.
inline nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }

inline nlohmann::json to_json(const Check& c) {
  nlohmann::json j;
  j["name"] = c.name;
  j["value"] = number_or_null(c.value);
  j["tolerance"] = number_or_null(c.tolerance);
  j["relation"] = c.relation;
  j["pass"] = c.pass;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

}  // namespace moyal::app
