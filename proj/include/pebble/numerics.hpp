#pragma once

// Exact polynomial root isolation and extended-precision helpers.

#include <cstdint>
#include <vector>

#include "pebble/scalar.hpp"

namespace pebble {

/// Polynomial with exact rational coefficients, lowest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  /// Coefficients from highest degree down, e.g. {1, -3, 1} is x^2 - 3x + 1.
  static Polynomial from_descending(std::vector<Rational> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& leading() const { return coeffs_.back(); }
  bool is_zero() const { return coeffs_.empty(); }

  Rational operator()(const Rational& x) const;
  Real eval(Real x) const;
  Polynomial derivative() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  /// Remainder of polynomial division.
  friend Polynomial operator%(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator/(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

Polynomial gcd(Polynomial a, Polynomial b);
/// p / gcd(p, p'): same real roots, all simple.
Polynomial square_free(const Polynomial& p);

/// Sturm chain of a square-free polynomial.
std::vector<Polynomial> sturm_chain(const Polynomial& p);
/// Number of distinct real roots of p in (lo, hi].
int count_roots(const std::vector<Polynomial>& chain, const Rational& lo, const Rational& hi);

/// Bracket [low, high] holding exactly one real root of the polynomial;
/// the endpoints differ in sign, or one of them is an exact root.
struct RootBracket {
  Rational low;
  Rational high;
  Polynomial polynomial;

  Rational mid() const { return (low + high) / 2; }
  Real approx() const { return ScalarTraits<Real>::from_rational(mid()); }
  Interval enclosure() const { return {low, high}; }
};

/// Least real root of p in [lo, hi], bracketed to width <= tol.
/// Throws InvalidInput if p has no root there.
RootBracket smallest_root_in(const Polynomial& p, const Rational& lo, const Rational& hi,
                             const Rational& tol);

/// Largest real root of p in [lo, hi].
RootBracket largest_root_in(const Polynomial& p, const Rational& lo, const Rational& hi,
                            const Rational& tol);

/// Narrows a bracket of a simple root by bisection until width <= tol.
RootBracket refine(RootBracket bracket, const Rational& tol);

/// (1 - r)^(k-1) - r expanded.
Polynomial rr_polynomial(int k);
/// Smallest root of r = (1 - r)^(k-1) in (0, 1): the round-robin rate.
RootBracket rr_rate(int k, const Rational& tol);

/// base^exponent evaluated as exp(exponent * ln base) in long double.
struct LogspacePower {
  Real log_value = 0;  // exponent * ln(base)
  Real value = 0;      // inf / 0 when out of range
  bool overflow = false;
  bool underflow = false;
  Real relative_error_bound = 0;
};

LogspacePower eval_logspace(Real base, std::int64_t exponent);
/// Same with the logarithm of the base supplied directly (avoids the
/// rounding of base itself when base = e^u is only known through u).
LogspacePower eval_logspace_from_log(Real log_base, std::int64_t exponent);

}  // namespace pebble
