#include "pebble/trace_io.hpp"

#include <fstream>

namespace pebble {
namespace {

template <class T, class Conv>
SchemeTrace<T> parse_trace(const nlohmann::json& j, Conv conv) {
  if (!j.is_object()) throw InvalidInput("trace must be a JSON object");
  for (const char* key : {"k", "initial", "actions"}) {
    if (!j.contains(key)) throw InvalidInput(std::string("trace is missing field '") + key + "'");
  }
  if (!j["k"].is_number_integer() || j["k"].get<long>() < 2) {
    throw InvalidInput("trace field 'k' must be an integer >= 2");
  }
  SchemeTrace<T> trace;
  trace.k = j["k"].get<std::size_t>();
  std::vector<T> initial;
  for (const auto& v : j["initial"]) initial.push_back(conv(v));
  if (initial.size() != trace.k) throw InvalidInput("initial snapshot must have exactly k entries");
  trace.initial = Snapshot<T>(std::move(initial));
  for (const auto& a : j["actions"]) {
    if (!a.contains("d") || !a.contains("t")) throw InvalidInput("action needs fields 'd' and 't'");
    if (!a["d"].is_number_integer()) throw InvalidInput("action device must be an integer");
    const long d = a["d"].get<long>();
    if (d < 1 || static_cast<std::size_t>(d) > trace.k) {
      throw InvalidInput("action device " + std::to_string(d) + " outside 1..k");
    }
    trace.actions.push_back({static_cast<std::size_t>(d), conv(a["t"])});
  }
  validate(trace);
  return trace;
}

}  // namespace

Rational json_rational(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number()) return parse_rational(v.dump());
  throw InvalidInput("expected a number or numeric string");
}

Real json_real(const nlohmann::json& v) {
  if (v.is_string()) return parse_real(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw InvalidInput("expected a number or numeric string");
}

SchemeTrace<Rational> trace_from_json_exact(const nlohmann::json& j) {
  return parse_trace<Rational>(j, json_rational);
}

SchemeTrace<Real> trace_from_json_float(const nlohmann::json& j) {
  return parse_trace<Real>(j, json_real);
}

nlohmann::json trace_to_json(const SchemeTrace<Rational>& trace) {
  nlohmann::json j;
  j["k"] = trace.k;
  j["initial"] = nlohmann::json::array();
  for (const auto& v : trace.initial.times()) j["initial"].push_back(format_rational(v));
  j["actions"] = nlohmann::json::array();
  for (const auto& a : trace.actions) {
    j["actions"].push_back({{"d", a.device}, {"t", format_rational(a.time)}});
  }
  return j;
}

nlohmann::json trace_to_json(const SchemeTrace<Real>& trace) {
  nlohmann::json j;
  j["k"] = trace.k;
  j["initial"] = nlohmann::json::array();
  for (const auto& v : trace.initial.times()) j["initial"].push_back(format_real(v));
  j["actions"] = nlohmann::json::array();
  for (const auto& a : trace.actions) j["actions"].push_back({{"d", a.device}, {"t", format_real(a.time)}});
  return j;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace pebble
