#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace kgqa {

// JSON has no infinities. -inf is written as null, +inf as the string "inf".
// Finite doubles go through nlohmann's shortest round-trip formatting.
inline nlohmann::json encode_real(double v) {
  if (std::isnan(v)) throw std::invalid_argument("cannot serialize NaN");
  if (v == -INFINITY) return nullptr;
  if (v == INFINITY) return "inf";
  return v;
}

inline double decode_real(const nlohmann::json& j) {
  if (j.is_null()) return -INFINITY;
  if (j.is_string() && j.get<std::string>() == "inf") return INFINITY;
  if (!j.is_number()) throw std::invalid_argument("expected a number, got " + j.dump());
  return j.get<double>();
}

}  // namespace kgqa
