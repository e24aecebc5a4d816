#include "pebble/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>

namespace pebble {
namespace {

// Top 64 bits of |z| as a long double, scaled back by the dropped bits.
Real mpz_to_real(const mpz_class& z) {
  if (z == 0) return 0.0L;
  mpz_class a = abs(z);
  const long bits = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2));
  long shift = 0;
  if (bits > 64) {
    shift = bits - 64;
    a >>= static_cast<mp_bitcnt_t>(shift);
  }
  // mpz_get_ui is 64-bit on LP64 targets.
  const std::uint64_t top = mpz_get_ui(a.get_mpz_t());
  Real v = std::ldexp(static_cast<Real>(top), static_cast<int>(shift));
  return z < 0 ? -v : v;
}

Rational real_to_rational_exact(Real x) {
  if (!std::isfinite(x)) throw InvalidInput("cannot convert a non-finite value to a rational");
  if (x == 0) return Rational(0);
  int exp = 0;
  Real mant = std::frexp(std::fabs(x), &exp);  // mant in [0.5, 1)
  // 64 mantissa bits fit exactly into an unsigned 64-bit integer.
  const auto m = static_cast<std::uint64_t>(std::ldexp(mant, 64));
  mpz_class num;
  mpz_import(num.get_mpz_t(), 1, 1, sizeof(m), 0, 0, &m);
  Rational r(num);
  const int e2 = exp - 64;
  if (e2 >= 0) {
    r *= Rational(mpz_class(1) << static_cast<mp_bitcnt_t>(e2));
  } else {
    r /= Rational(mpz_class(1) << static_cast<mp_bitcnt_t>(-e2));
  }
  r.canonicalize();
  return x < 0 ? Rational(-r) : r;
}

}  // namespace

Real ScalarTraits<Real>::from_rational(const Rational& r) {
  if (r == 0) return 0.0L;
  const mpz_class& num = r.get_num();
  const mpz_class& den = r.get_den();
  const long nb = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
  const long db = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  const long s = 70 - (nb - db);
  mpz_class n2 = num;
  mpz_class d2 = den;
  if (s >= 0) {
    n2 <<= static_cast<mp_bitcnt_t>(s);
  } else {
    d2 <<= static_cast<mp_bitcnt_t>(-s);
  }
  mpz_class quotient = n2 / d2;
  return std::ldexp(mpz_to_real(quotient), static_cast<int>(-s));
}

Real ScalarTraits<Interval>::to_real(const Interval& v) {
  return ScalarTraits<Real>::from_rational(v.mid());
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  // trim
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  s = s.substr(b);
  if (s.empty()) throw InvalidInput("empty number");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpz_class p, q;
    if (p.set_str(s.substr(0, slash), 10) != 0 || q.set_str(s.substr(slash + 1), 10) != 0) {
      throw InvalidInput("malformed rational '" + s + "'");
    }
    if (q == 0) throw InvalidInput("zero denominator in '" + s + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
  }

  // Decimal with optional exponent.
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw InvalidInput("malformed number '" + s + "'");
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw InvalidInput("malformed number '" + s + "'");
    ++i;
    try {
      std::size_t used = 0;
      exponent = std::stol(s.substr(i), &used);
      if (i + used != s.size()) throw InvalidInput("malformed exponent in '" + s + "'");
    } catch (const std::logic_error&) {
      throw InvalidInput("malformed exponent in '" + s + "'");
    }
  }
  mpz_class mant(digits, 10);
  const long scale = exponent - frac_digits;
  Rational r(mant);
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  if (scale >= 0) {
    r *= Rational(ten_pow);
  } else {
    r /= Rational(ten_pow);
  }
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string format_rational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string format_real(Real value, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << value;
  return os.str();
}

Real parse_real(std::string_view text) {
  std::string s(text);
  if (s.find('/') != std::string::npos) {
    return ScalarTraits<Real>::from_rational(parse_rational(s));
  }
  char* end = nullptr;
  Real v = std::strtold(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw InvalidInput("malformed number '" + s + "'");
  return v;
}

Rational rationalize(Real x, const mpz_class& max_den) {
  Rational exact = real_to_rational_exact(x);
  // Continued-fraction convergents of the exact dyadic value.
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  mpz_class num = exact.get_num();
  mpz_class den = exact.get_den();
  while (den != 0) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class p2 = a * p1 + p0;
    mpz_class q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    mpz_class rem = num - a * den;
    num = den;
    den = rem;
  }
  if (q1 == 0) return Rational(p0, q0);
  Rational r(p1, q1);
  r.canonicalize();
  return r;
}

}  // namespace pebble
