#pragma once

// Number types shared by every module.
//
//   Rational  exact arithmetic (GMP), used for LP certificates and proofs
//   Real      extended precision float (x87 long double, 64-bit mantissa)
//   Interval  closed interval with exact rational endpoints; used for
//             irrational parameters (golden ratio, plastic number, ...)
//             where a certified enclosure is wanted instead of a float

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pebble {

using Rational = mpq_class;
using Real = long double;

/// Raised for inputs that violate a documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an interval comparison cannot be decided at the current
/// enclosure width. Callers refine the enclosure and retry.
class UnresolvedComparison : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Interval {
 public:
  Interval() = default;
  Interval(const Rational& v) : lo_(v), hi_(v) {}  // NOLINT(implicit)
  Interval(long v) : lo_(v), hi_(v) {}              // NOLINT(implicit)
  Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw InvalidInput("interval with hi < lo");
  }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational mid() const { return (lo_ + hi_) / 2; }
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return {a.lo_ + b.lo_, a.hi_ + b.hi_};
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return {a.lo_ - b.hi_, a.hi_ - b.lo_};
  }
  friend Interval operator-(const Interval& a) { return {-a.hi_, -a.lo_}; }
  friend Interval operator*(const Interval& a, const Interval& b) {
    Rational p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_;
    Rational p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo_ <= 0 && b.hi_ >= 0) {
      throw UnresolvedComparison("interval division by an enclosure of zero");
    }
    return a * Interval(1 / b.hi_, 1 / b.lo_);
  }
  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }
  Interval& operator/=(const Interval& o) { return *this = *this / o; }

  // Certain comparisons; overlapping enclosures cannot be ordered.
  friend bool operator<(const Interval& a, const Interval& b) {
    if (a.hi_ < b.lo_) return true;
    if (a.lo_ >= b.hi_) return false;
    throw UnresolvedComparison("overlapping interval enclosures");
  }
  friend bool operator>(const Interval& a, const Interval& b) { return b < a; }
  friend bool operator<=(const Interval& a, const Interval& b) { return !(b < a); }
  friend bool operator>=(const Interval& a, const Interval& b) { return !(a < b); }

 private:
  Rational lo_{0};
  Rational hi_{0};
};

/// Per-type helpers so that the model code can be written once.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational from_rational(const Rational& r) { return r; }
  static Real to_real(const Rational& v) { return static_cast<Real>(v.get_d()); }
  static Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
  static bool ranks_above(const Rational& a, const Rational& b) { return a > b; }
  static Rational abs(const Rational& a) { return ::abs(a); }
};

template <>
struct ScalarTraits<Real> {
  static constexpr bool exact = false;
  static Real from_rational(const Rational& r);
  static Real to_real(Real v) { return v; }
  static Real max(Real a, Real b) { return a < b ? b : a; }
  static bool ranks_above(Real a, Real b) { return a > b; }
  static Real abs(Real a) { return a < 0 ? -a : a; }
};

template <>
struct ScalarTraits<Interval> {
  static constexpr bool exact = false;
  static Interval from_rational(const Rational& r) { return Interval(r); }
  static Real to_real(const Interval& v);
  static Interval max(const Interval& a, const Interval& b) {
    return {std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
  }
  // Argmax selection by upper bound; never throws.
  static bool ranks_above(const Interval& a, const Interval& b) { return a.hi() > b.hi(); }
  static Interval abs(const Interval& a) {
    if (a.lo() >= 0) return a;
    if (a.hi() <= 0) return -a;
    return {Rational(0), std::max(Rational(-a.lo()), a.hi())};
  }
};

/// Integer power by repeated squaring, for any scalar type.
template <class T>
T ipow(T base, unsigned long exponent) {
  T result = ScalarTraits<T>::from_rational(Rational(1));
  while (exponent > 0) {
    if (exponent & 1UL) result = result * base;
    exponent >>= 1UL;
    if (exponent > 0) base = base * base;
  }
  return result;
}

/// Parses "p/q", an integer, or a decimal ("1.25", "-3e-5") exactly.
Rational parse_rational(std::string_view text);
/// "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& value);
/// Decimal rendering of a long double with the given number of digits.
std::string format_real(Real value, int digits = 21);
Real parse_real(std::string_view text);

/// Best rational approximation of x with denominator <= max_den
/// (continued fractions). Used to move float estimates into exact mode.
Rational rationalize(Real x, const mpz_class& max_den);

}  // namespace pebble
