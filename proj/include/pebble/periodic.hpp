#pragma once

// (q, m)-periodic schemes: a device tuple D and time tuple P that repeat
// with every period scaled by q^m, starting from S0.

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pebble/core.hpp"
#include "pebble/numerics.hpp"

namespace pebble {

template <class T>
struct PeriodicScheme {
  std::size_t k = 0;
  T q{};       // growth per action
  T qm{};      // growth per period, q^m (kept separately so q may be irrational
               // while q^m is not, as for the k = 4 scheme)
  std::vector<std::size_t> D;
  std::vector<T> P;
  Snapshot<T> S0;

  std::size_t m() const { return D.size(); }
};

/// Checks the field invariants (not periodicity). Throws InvalidInput.
template <class T>
void check_fields(const PeriodicScheme<T>& ps) {
  const T one = ScalarTraits<T>::from_rational(Rational(1));
  if (ps.k < 2) throw InvalidInput("periodic scheme needs k >= 2");
  if (ps.S0.k() != ps.k) throw InvalidInput("S0 length differs from k");
  if (ps.D.empty()) throw InvalidInput("period must be non-empty");
  if (ps.P.size() != ps.D.size()) throw InvalidInput("D and P differ in length");
  if (!(one < ps.q)) throw InvalidInput("q must exceed 1");
  for (auto d : ps.D) {
    if (d < 1 || d + 1 > ps.k) throw InvalidInput("periodic devices must lie in 1..k-1");
  }
  if (!(ps.S0.newest() < ps.P.front())) throw InvalidInput("P_1 must exceed the newest time of S0");
  for (std::size_t i = 1; i < ps.P.size(); ++i) {
    if (!(ps.P[i - 1] < ps.P[i])) throw InvalidInput("P must be strictly increasing");
  }
}

template <class T>
SchemeTrace<T> unroll(const PeriodicScheme<T>& ps, std::size_t periods) {
  if (periods < 1) throw InvalidInput("periods must be >= 1");
  check_fields(ps);
  SchemeTrace<T> trace{ps.k, ps.S0, {}};
  T scale = ScalarTraits<T>::from_rational(Rational(1));
  for (std::size_t j = 0; j < periods; ++j) {
    for (std::size_t n = 0; n < ps.m(); ++n) trace.actions.push_back({ps.D[n], ps.P[n] * scale});
    scale = scale * ps.qm;
  }
  return trace;
}

template <class T>
struct PeriodicityCheck {
  bool periodic = false;
  T deviation{};  // max |S_m - q^m S0| entrywise
  Snapshot<T> Sm;
};

/// Whether the enclosure / value is within tol of zero.
inline bool within_tol(const Rational& v, const Rational& tol) { return v <= tol; }
inline bool within_tol(Real v, const Rational& tol) {
  return v <= ScalarTraits<Real>::from_rational(tol);
}
inline bool within_tol(const Interval& v, const Rational& tol) { return v.hi() <= tol; }

template <class T>
PeriodicityCheck<T> verify_periodic(const PeriodicScheme<T>& ps, const Rational& tol) {
  check_fields(ps);
  using Tr = ScalarTraits<T>;
  Snapshot<T> s = ps.S0;
  for (std::size_t n = 0; n < ps.m(); ++n) s = apply_update(s, ps.D[n], ps.P[n]);
  PeriodicityCheck<T> out;
  out.deviation = Tr::from_rational(Rational(0));
  for (std::size_t i = 0; i < ps.k; ++i) {
    const T dev = Tr::abs(s.times()[i] - ps.qm * ps.S0.times()[i]);
    out.deviation = Tr::max(out.deviation, dev);
  }
  out.periodic = within_tol(out.deviation, tol);
  out.Sm = std::move(s);
  return out;
}

/// Default periodicity tolerance per arithmetic mode.
template <class T>
Rational default_periodic_tol();
template <>
inline Rational default_periodic_tol<Rational>() { return 0; }
template <>
inline Rational default_periodic_tol<Real>() { return Rational(1, 1000000000); }
template <>
inline Rational default_periodic_tol<Interval>() { return Rational(1, 1000000000); }

/// Efficiency of the infinite periodic scheme. Two unrolled periods hold
/// every Property-2 term once up to scaling, including the wraparound gap
/// (t_m, q^m t_1); compliance of S0 itself is not part of it (rebased).
template <class T>
ComplianceReport<T> periodic_efficiency(const PeriodicScheme<T>& ps,
                                        const Rational& tol = default_periodic_tol<T>()) {
  const auto chk = verify_periodic(ps, tol);
  if (!chk.periodic) throw InvalidInput("scheme is not periodic within tolerance");
  return measured_efficiency(unroll(ps, 2), false);
}

template <class T>
PeriodicScheme<T> scale_scheme(const PeriodicScheme<T>& ps, const T& factor) {
  PeriodicScheme<T> out = ps;
  out.S0 = ps.S0.scaled(factor);
  for (auto& p : out.P) p = p * factor;
  return out;
}

// --- irrational parameters ------------------------------------------------

/// Turns a root bracket into the scalar of the requested mode: the midpoint
/// for Real, the enclosure for Interval. Rational mode accepts only brackets
/// that pinned the root exactly.
template <class T>
T from_bracket(const RootBracket& b);
template <>
inline Real from_bracket<Real>(const RootBracket& b) { return b.approx(); }
template <>
inline Interval from_bracket<Interval>(const RootBracket& b) { return b.enclosure(); }
template <>
inline Rational from_bracket<Rational>(const RootBracket& b) {
  if (b.low != b.high) throw InvalidInput("irrational parameter in exact mode; use interval or float mode");
  return b.low;
}

/// Round-robin: D = (1), S0 = (1, q, ..., q^{k-1}), P = (q^k), q = 1/(1 - r_k).
template <class T>
PeriodicScheme<T> rr_scheme_from_q(std::size_t k, const T& q) {
  const T one = ScalarTraits<T>::from_rational(Rational(1));
  std::vector<T> s0{one};
  for (std::size_t i = 1; i < k; ++i) s0.push_back(s0.back() * q);
  PeriodicScheme<T> ps;
  ps.k = k;
  ps.q = q;
  ps.qm = q;
  ps.D = {1};
  ps.P = {s0.back() * q};
  ps.S0 = Snapshot<T>(std::move(s0));
  return ps;
}

/// Bracket width used when a caller does not ask for one: 2^-100.
inline Rational fine_tol() { return Rational(mpz_class(1), mpz_class(1) << 100); }

template <class T>
PeriodicScheme<T> rr_scheme(int k, const Rational& tol = fine_tol()) {
  const RootBracket r = rr_rate(k, tol);
  // q = 1 / (1 - r) is decreasing in r, so the bracket flips.
  const Interval qi = Interval(Rational(1)) / (Interval(Rational(1)) - r.enclosure());
  T q;
  if constexpr (std::is_same_v<T, Interval>) {
    q = qi;
  } else if constexpr (std::is_same_v<T, Real>) {
    q = 1 / (1 - r.approx());
  } else {
    if (r.low != r.high) throw InvalidInput("round-robin rate is irrational for this k; use interval or float mode");
    q = 1 / (1 - r.low);
  }
  return rr_scheme_from_q<T>(static_cast<std::size_t>(k), q);
}

/// alpha = largest root of x^3 - x^2 - 2x + 1; q = sqrt(alpha).
RootBracket k4_alpha(const Rational& tol);
/// q = sqrt(alpha) as a root of x^6 - x^4 - 2x^2 + 1.
RootBracket k4_q(const Rational& tol);
/// r_5 = smallest root of x^3 - 4x^2 + 5x - 1.
RootBracket k5_rate(const Rational& tol);

/// k = 4: D = (3,1), S0 = (1, a, a^3 - a^2, a^2), P = (a^4 - a^3, a^3), q^2 = a.
template <class T>
PeriodicScheme<T> k4_scheme_from(const T& q, const T& alpha) {
  const T one = ScalarTraits<T>::from_rational(Rational(1));
  const T a2 = alpha * alpha;
  const T a3 = a2 * alpha;
  const T a4 = a3 * alpha;
  PeriodicScheme<T> ps;
  ps.k = 4;
  ps.q = q;
  ps.qm = alpha;
  ps.D = {3, 1};
  ps.P = {a4 - a3, a3};
  ps.S0 = Snapshot<T>({one, alpha, a3 - a2, a2});
  return ps;
}

/// k = 5: D = (3,1), S0 = (1, q^2, q^3, q^4, q^5), P = (q^6, q^7), q = 1/(1 - r_5).
template <class T>
PeriodicScheme<T> k5_scheme_from(const T& q) {
  const T one = ScalarTraits<T>::from_rational(Rational(1));
  std::vector<T> pw{one};
  for (int i = 1; i <= 7; ++i) pw.push_back(pw.back() * q);
  PeriodicScheme<T> ps;
  ps.k = 5;
  ps.q = q;
  ps.qm = pw[2];
  ps.D = {3, 1};
  ps.P = {pw[6], pw[7]};
  ps.S0 = Snapshot<T>({one, pw[2], pw[3], pw[4], pw[5]});
  return ps;
}

PeriodicScheme<Real> k4_scheme_float();
PeriodicScheme<Interval> k4_scheme_interval(const Rational& tol);
PeriodicScheme<Real> k5_scheme_float();
PeriodicScheme<Interval> k5_scheme_interval(const Rational& tol);

// --- file format ----------------------------------------------------------
//
// {"k": 5, "q": "1.3247" | {"poly": [...], "bracket": [lo, hi]},
//  "m": 2, "D": [3, 1], "P": [...], "S0": [...]}
//
// "poly" lists coefficients from the highest degree down. Entries of P and
// S0 are numeric strings, or {"q_poly": [c0, c1, ...]} meaning sum c_i q^i,
// which keeps schemes with irrational q exact.

/// Parsed but not yet instantiated scheme.
struct PeriodicSpec {
  std::size_t k = 0;
  std::variant<Rational, RootBracket> q;
  std::vector<std::size_t> D;
  using Entry = std::variant<Rational, std::vector<Rational>>;  // value or q-polynomial
  std::vector<Entry> P;
  std::vector<Entry> S0;
  bool q_is_root() const { return std::holds_alternative<RootBracket>(q); }
};

PeriodicSpec periodic_spec_from_json(const nlohmann::json& j);
bool looks_like_periodic(const nlohmann::json& j);

PeriodicScheme<Rational> instantiate_exact(const PeriodicSpec& spec);
PeriodicScheme<Real> instantiate_float(const PeriodicSpec& spec);
/// Root-valued q enclosed to width <= tol.
PeriodicScheme<Interval> instantiate_interval(const PeriodicSpec& spec, const Rational& tol);

/// Runs fn with enclosures of width 2^-bits, doubling bits until no
/// comparison is left unresolved (bounded; rethrows when exhausted).
template <class Fn>
auto with_refinement(Fn fn, int start_bits = 64, int max_bits = 4096) {
  for (int bits = start_bits;; bits *= 2) {
    const Rational tol(mpz_class(1), mpz_class(1) << bits);
    try {
      return fn(tol);
    } catch (const UnresolvedComparison&) {
      if (bits * 2 > max_bits) throw;
    }
  }
}

nlohmann::json periodic_to_json(const PeriodicScheme<Rational>& ps);
nlohmann::json periodic_to_json(const PeriodicScheme<Real>& ps);

}  // namespace pebble
