#include "pebble/numerics.hpp"

#include <cfloat>
#include <cmath>
#include <limits>

namespace pebble {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::from_descending(std::vector<Rational> coeffs) {
  return Polynomial(std::vector<Rational>(coeffs.rbegin(), coeffs.rend()));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Real Polynomial::eval(Real x) const {
  Real acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + ScalarTraits<Real>::from_rational(*it);
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Polynomial(std::move(d));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

namespace {

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw InvalidInput("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial{}, a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  for (int i = a.degree(); i >= db; --i) {
    const Rational f = rem[static_cast<std::size_t>(i)] / b.leading();
    quot[static_cast<std::size_t>(i - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) {
      rem[static_cast<std::size_t>(i - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

int sign(const Rational& v) { return sgn(v); }

}  // namespace

Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }
Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  // monic
  std::vector<Rational> c = a.coeffs();
  const Rational lead = c.back();
  for (auto& v : c) v /= lead;
  return Polynomial(std::move(c));
}

Polynomial square_free(const Polynomial& p) {
  if (p.degree() <= 0) return p;
  Polynomial g = gcd(p, p.derivative());
  if (g.degree() <= 0) return p;
  return p / g;
}

std::vector<Polynomial> sturm_chain(const Polynomial& p) {
  std::vector<Polynomial> chain{p, p.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    Polynomial r = chain[chain.size() - 2] % chain.back();
    if (r.is_zero()) break;
    chain.push_back(Polynomial{} - r);
  }
  return chain;
}

namespace {

int sign_variations(const std::vector<Polynomial>& chain, const Rational& x) {
  int variations = 0;
  int last = 0;
  for (const auto& poly : chain) {
    const int s = sign(poly(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

}  // namespace

int count_roots(const std::vector<Polynomial>& chain, const Rational& lo, const Rational& hi) {
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

RootBracket refine(RootBracket bracket, const Rational& tol) {
  const Polynomial& p = bracket.polynomial;
  Rational lo = bracket.low;
  Rational hi = bracket.high;
  if (p(lo) == 0) return {lo, lo, p};
  if (p(hi) == 0) return {hi, hi, p};
  const int slo = sign(p(lo));
  if (slo == sign(p(hi))) throw InvalidInput("bracket endpoints do not straddle a root");
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    const int sm = sign(p(mid));
    if (sm == 0) return {mid, mid, p};
    if (sm == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi, p};
}

namespace {

// Bisects on Sturm counts until [a, b] isolates the extreme root, then
// refines by sign bisection.
RootBracket extreme_root(const Polynomial& p, const Rational& lo, const Rational& hi,
                         const Rational& tol, bool smallest) {
  if (p.degree() < 1) throw InvalidInput("polynomial must have degree >= 1");
  if (hi < lo) throw InvalidInput("empty search range");
  const Polynomial sq = square_free(p);
  if (smallest && sq(lo) == 0) return {lo, lo, sq};
  if (!smallest && sq(hi) == 0) return {hi, hi, sq};
  const auto chain = sturm_chain(sq);
  // Roots in [lo, hi] = roots in (lo, hi] plus a possible root at lo.
  int total = count_roots(chain, lo, hi) + (sq(lo) == 0 ? 1 : 0);
  if (total == 0) throw InvalidInput("no real root in the requested range");
  Rational a = lo;
  Rational b = hi;
  if (!smallest && sq(lo) == 0 && count_roots(chain, lo, hi) == 0) return {lo, lo, sq};
  while (count_roots(chain, a, b) > 1) {
    Rational mid = (a + b) / 2;
    const int left = count_roots(chain, a, mid);
    if (smallest) {
      if (left >= 1) {
        b = mid;
      } else {
        a = mid;
      }
    } else {
      if (count_roots(chain, mid, b) >= 1) {
        a = mid;
      } else {
        b = mid;
      }
    }
  }
  // Exactly one root in (a, b].
  if (sq(b) == 0) {
    if (b - a <= tol) return {a, b, sq};
    // The root is b itself.
    return {b, b, sq};
  }
  return refine({a, b, sq}, tol);
}

}  // namespace

RootBracket smallest_root_in(const Polynomial& p, const Rational& lo, const Rational& hi,
                             const Rational& tol) {
  return extreme_root(p, lo, hi, tol, true);
}

RootBracket largest_root_in(const Polynomial& p, const Rational& lo, const Rational& hi,
                            const Rational& tol) {
  return extreme_root(p, lo, hi, tol, false);
}

Polynomial rr_polynomial(int k) {
  if (k < 2) throw InvalidInput("round-robin needs k >= 2");
  // (1 - r)^(k-1) via the binomial theorem, minus r.
  const int n = k - 1;
  std::vector<Rational> c(static_cast<std::size_t>(n + 1), Rational(0));
  mpz_class binom = 1;
  for (int i = 0; i <= n; ++i) {
    c[static_cast<std::size_t>(i)] = (i % 2 == 0) ? Rational(binom) : Rational(-binom);
    binom = binom * (n - i) / (i + 1);
  }
  c[1] -= 1;
  return Polynomial(std::move(c));
}

RootBracket rr_rate(int k, const Rational& tol) {
  // f(r) = (1-r)^(k-1) - r is strictly decreasing on [0, 1] with f(0) = 1 and
  // f(1) = -1, so the root in (0, 1) is unique and sign bisection suffices.
  Polynomial p = rr_polynomial(k);
  return refine({Rational(0), Rational(1), p}, tol);
}

LogspacePower eval_logspace_from_log(Real log_base, std::int64_t exponent) {
  LogspacePower out;
  out.log_value = static_cast<Real>(exponent) * log_base;
  static const Real max_log = std::log(LDBL_MAX);
  static const Real min_log = std::log(LDBL_MIN);
  const Real eps = std::numeric_limits<Real>::epsilon();
  // exp amplifies the absolute error of its argument into relative error.
  out.relative_error_bound = (std::fabs(out.log_value) + 4) * eps;
  if (out.log_value > max_log) {
    out.overflow = true;
    out.value = std::numeric_limits<Real>::infinity();
  } else if (out.log_value < min_log) {
    out.underflow = true;
    out.value = 0;
  } else {
    out.value = std::exp(out.log_value);
  }
  return out;
}

LogspacePower eval_logspace(Real base, std::int64_t exponent) {
  if (!(base > 0)) throw InvalidInput("eval_logspace needs a positive base");
  return eval_logspace_from_log(std::log(base), exponent);
}

}  // namespace pebble
