#pragma once

// Trace files:
//   {"k": 3, "initial": ["1", "2", "3"], "actions": [{"d": 1, "t": "9/2"}, ...]}
// Times are "p/q" strings, integers or decimals. Exact traces are written
// back as "p/q" so a round trip is bit-exact.

#include <string>

#include <json.hpp>

#include "pebble/core.hpp"

namespace pebble {

SchemeTrace<Rational> trace_from_json_exact(const nlohmann::json& j);
SchemeTrace<Real> trace_from_json_float(const nlohmann::json& j);

nlohmann::json trace_to_json(const SchemeTrace<Rational>& trace);
nlohmann::json trace_to_json(const SchemeTrace<Real>& trace);

/// Reads a number that may be a JSON number or a string.
Rational json_rational(const nlohmann::json& v);
Real json_real(const nlohmann::json& v);

nlohmann::json load_json_file(const std::string& path);

}  // namespace pebble
