#include "pebble/periodic.hpp"

#include <cmath>

#include "pebble/trace_io.hpp"

namespace pebble {

RootBracket k4_alpha(const Rational& tol) {
  return largest_root_in(Polynomial::from_descending({1, -1, -2, 1}), 1, 2, tol);
}

RootBracket k4_q(const Rational& tol) {
  return largest_root_in(Polynomial::from_descending({1, 0, -1, 0, -2, 0, 1}), 1, 2, tol);
}

RootBracket k5_rate(const Rational& tol) {
  return smallest_root_in(Polynomial::from_descending({1, -4, 5, -1}), 0, 1, tol);
}

PeriodicScheme<Real> k4_scheme_float() {
  const Real alpha = k4_alpha(fine_tol()).approx();
  return k4_scheme_from<Real>(std::sqrt(alpha), alpha);
}

PeriodicScheme<Interval> k4_scheme_interval(const Rational& tol) {
  return k4_scheme_from<Interval>(k4_q(tol).enclosure(), k4_alpha(tol).enclosure());
}

PeriodicScheme<Real> k5_scheme_float() {
  return k5_scheme_from<Real>(1 / (1 - k5_rate(fine_tol()).approx()));
}

PeriodicScheme<Interval> k5_scheme_interval(const Rational& tol) {
  const Interval one(Rational(1));
  return k5_scheme_from<Interval>(one / (one - k5_rate(tol).enclosure()));
}

bool looks_like_periodic(const nlohmann::json& j) {
  return j.is_object() && j.contains("D") && j.contains("P") && j.contains("S0");
}

namespace {

RootBracket parse_root_spec(const nlohmann::json& j) {
  if (!j.contains("poly") || !j.contains("bracket")) {
    throw InvalidInput("root spec needs 'poly' and 'bracket'");
  }
  std::vector<Rational> coeffs;
  for (const auto& c : j["poly"]) coeffs.push_back(json_rational(c));
  Polynomial p = Polynomial::from_descending(std::move(coeffs));
  if (p.degree() < 1) throw InvalidInput("root spec polynomial must have degree >= 1");
  if (!j["bracket"].is_array() || j["bracket"].size() != 2) {
    throw InvalidInput("root spec bracket must be [lo, hi]");
  }
  const Rational lo = json_rational(j["bracket"][0]);
  const Rational hi = json_rational(j["bracket"][1]);
  if (hi < lo) throw InvalidInput("root spec bracket has hi < lo");
  const Polynomial sq = square_free(p);
  const int roots = count_roots(sturm_chain(sq), lo, hi) + (sq(lo) == 0 ? 1 : 0);
  if (roots != 1) {
    throw InvalidInput("root spec bracket must isolate exactly one root (found " +
                       std::to_string(roots) + ")");
  }
  return {lo, hi, sq};
}

PeriodicSpec::Entry parse_entry(const nlohmann::json& v) {
  if (v.is_object()) {
    if (!v.contains("q_poly")) throw InvalidInput("object entries must be {\"q_poly\": [...]}");
    std::vector<Rational> c;
    for (const auto& x : v["q_poly"]) c.push_back(json_rational(x));
    return c;
  }
  return json_rational(v);
}

template <class T>
T eval_entry(const PeriodicSpec::Entry& e, const T& q) {
  if (const auto* r = std::get_if<Rational>(&e)) return ScalarTraits<T>::from_rational(*r);
  const auto& c = std::get<std::vector<Rational>>(e);
  T acc = ScalarTraits<T>::from_rational(Rational(0));
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * q + ScalarTraits<T>::from_rational(*it);
  return acc;
}

template <class T>
PeriodicScheme<T> build(const PeriodicSpec& spec, const T& q) {
  PeriodicScheme<T> ps;
  ps.k = spec.k;
  ps.q = q;
  ps.qm = ipow(q, spec.D.size());
  ps.D = spec.D;
  for (const auto& e : spec.P) ps.P.push_back(eval_entry(e, q));
  std::vector<T> s0;
  for (const auto& e : spec.S0) s0.push_back(eval_entry(e, q));
  ps.S0 = Snapshot<T>(std::move(s0));
  check_fields(ps);
  return ps;
}

}  // namespace

PeriodicSpec periodic_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("periodic scheme must be a JSON object");
  for (const char* key : {"k", "q", "D", "P", "S0"}) {
    if (!j.contains(key)) throw InvalidInput(std::string("periodic scheme is missing field '") + key + "'");
  }
  PeriodicSpec spec;
  if (!j["k"].is_number_integer() || j["k"].get<long>() < 2) throw InvalidInput("'k' must be an integer >= 2");
  spec.k = j["k"].get<std::size_t>();
  if (j["q"].is_object()) {
    spec.q = parse_root_spec(j["q"]);
  } else {
    spec.q = json_rational(j["q"]);
  }
  for (const auto& d : j["D"]) {
    if (!d.is_number_integer()) throw InvalidInput("device indices must be integers");
    const long v = d.get<long>();
    if (v < 1 || static_cast<std::size_t>(v) + 1 > spec.k) throw InvalidInput("periodic devices must lie in 1..k-1");
    spec.D.push_back(static_cast<std::size_t>(v));
  }
  if (j.contains("m") && j["m"].get<std::size_t>() != spec.D.size()) {
    throw InvalidInput("'m' differs from the length of D");
  }
  for (const auto& v : j["P"]) spec.P.push_back(parse_entry(v));
  for (const auto& v : j["S0"]) spec.S0.push_back(parse_entry(v));
  if (spec.S0.size() != spec.k) throw InvalidInput("S0 must have exactly k entries");
  if (spec.P.size() != spec.D.size()) throw InvalidInput("D and P differ in length");
  return spec;
}

PeriodicScheme<Rational> instantiate_exact(const PeriodicSpec& spec) {
  if (spec.q_is_root()) throw InvalidInput("q is a root spec; exact mode needs interval enclosures");
  return build<Rational>(spec, std::get<Rational>(spec.q));
}

PeriodicScheme<Real> instantiate_float(const PeriodicSpec& spec) {
  if (spec.q_is_root()) return build<Real>(spec, refine(std::get<RootBracket>(spec.q), fine_tol()).approx());
  return build<Real>(spec, ScalarTraits<Real>::from_rational(std::get<Rational>(spec.q)));
}

PeriodicScheme<Interval> instantiate_interval(const PeriodicSpec& spec, const Rational& tol) {
  if (spec.q_is_root()) return build<Interval>(spec, refine(std::get<RootBracket>(spec.q), tol).enclosure());
  return build<Interval>(spec, Interval(std::get<Rational>(spec.q)));
}

nlohmann::json periodic_to_json(const PeriodicScheme<Rational>& ps) {
  nlohmann::json j;
  j["k"] = ps.k;
  j["q"] = format_rational(ps.q);
  j["m"] = ps.m();
  j["D"] = ps.D;
  j["P"] = nlohmann::json::array();
  for (const auto& p : ps.P) j["P"].push_back(format_rational(p));
  j["S0"] = nlohmann::json::array();
  for (const auto& v : ps.S0.times()) j["S0"].push_back(format_rational(v));
  return j;
}

nlohmann::json periodic_to_json(const PeriodicScheme<Real>& ps) {
  nlohmann::json j;
  j["k"] = ps.k;
  j["q"] = format_real(ps.q);
  j["m"] = ps.m();
  j["D"] = ps.D;
  j["P"] = nlohmann::json::array();
  for (const auto& p : ps.P) j["P"].push_back(format_real(p));
  j["S0"] = nlohmann::json::array();
  for (const auto& v : ps.S0.times()) j["S0"].push_back(format_real(v));
  return j;
}

}  // namespace pebble
