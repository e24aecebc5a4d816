#pragma once

// The recursive geometric family B(q, K): an outer device is updated every
// other step while an inner copy of the scheme runs at half speed.
// Everything large-k is evaluated through u = ln q so that exponents in
// the millions never get expanded.

#include <cstdint>
#include <string>
#include <vector>

#include "pebble/periodic.hpp"

namespace pebble {

/// k = k_0 > k_1 > ... > k_t > k_{t+1} = 0, stored in that order.
class RecursionKey {
 public:
  RecursionKey() = default;
  /// Accepts the elements in any order; they are sorted descending and the
  /// trailing 0 is added if missing.
  explicit RecursionKey(std::vector<std::int64_t> elements);

  std::int64_t k() const { return el_.front(); }
  int t() const { return static_cast<int>(el_.size()) - 2; }
  std::int64_t operator[](std::size_t i) const { return el_.at(i); }
  const std::vector<std::int64_t>& elements() const { return el_; }
  /// K without k_1: the key of the inner scheme.
  RecursionKey inner() const;
  std::string to_string() const;

 private:
  std::vector<std::int64_t> el_;
};

/// d_n = 1 + k_{mu(n)+1}, n = 1..2^t.
std::vector<std::size_t> device_sequence(const RecursionKey& K);

/// e(l) = sum_{i<=l} 2^i (k_i - k_{i+1}).
std::int64_t exponent_e(const RecursionKey& K, int l);

struct RateBreakdown {
  Real cond1 = 0;
  std::vector<Real> cond2;  // l = 0..t-1
  Real cond3 = 0;
  Real rate = 0;
  // Which condition binds: 1, 2 (with binding_level) or 3.
  int binding = 1;
  int binding_level = -1;
};

/// r(q, K) from u = ln q > 0.
RateBreakdown rate_log(Real u, const RecursionKey& K);
inline RateBreakdown rate(Real q, const RecursionKey& K) {
  if (!(q > 1)) throw InvalidInput("rate needs q > 1");
  return rate_log(std::log(q), K);
}

/// K* with k_i = floor(k / 2^i), t = floor(log2 k) - 1.
RecursionKey kstar(std::int64_t k);

/// The polynomial whose smallest root > 1 is q*, as printed in tables.
struct CrossingEquation {
  int kind = 3;   // 2: cond1 = cond2_l, 3: cond1 = cond3
  int level = -1;
  // cond3: x^a - x^(a-1) - 1.
  // cond2: x^A - x^(A-1) - x^B + 1 = (x - 1)(x^(A-1) - x^(B-1) - ... - 1).
  std::int64_t a = 0;
  std::int64_t A = 0;
  std::int64_t B = 0;
  std::string text() const;
  /// Expanded polynomial (only sensible for small exponents).
  Polynomial polynomial() const;
};

/// q* is the crossing of cond1 with another condition at which cond1 is
/// the binding maximum, choosing the one of least rate; this is the
/// convention behind the published tables. For small k the rate keeps
/// falling below q* (cond1 inactive), so the unrestricted minimiser of
/// r(q, K) is reported next to it.
struct OptimizeResult {
  Real u = 0;  // ln q*
  Real q = 0;
  RateBreakdown breakdown;
  Real efficiency = 0;  // k * rate
  CrossingEquation equation;
  bool validated = false;  // rate(q* +- step) >= rate(q*) - slack, i.e. a local minimum

  Real global_u = 0;
  Real global_q = 0;
  Real global_efficiency = 0;
  bool cond1_binding_is_global = false;
};

OptimizeResult optimize_q(const RecursionKey& K, Real tol = 1e-12L);

/// Simulates B(q, K) from the geometric seed (q, ..., q^k) until one
/// period maps S_{(j-1)m} onto q^m S_{(j-1)m}, then returns that period.
/// Throws std::runtime_error if periodicity is not reached.
struct ExponentScheme {
  std::size_t k = 0;
  std::vector<std::size_t> D;
  std::vector<std::int64_t> P;   // exponents of the update times
  std::vector<std::int64_t> S0;  // exponents of S0, newest normalised to 0
  std::size_t warmup_periods = 0;
};
ExponentScheme periodic_exponents(const RecursionKey& K);

template <class T>
PeriodicScheme<T> to_periodic(const T& q, const RecursionKey& K) {
  const ExponentScheme ex = periodic_exponents(K);
  const T one = ScalarTraits<T>::from_rational(Rational(1));
  auto pw = [&](std::int64_t e) {
    return e >= 0 ? ipow(q, static_cast<unsigned long>(e)) : one / ipow(q, static_cast<unsigned long>(-e));
  };
  PeriodicScheme<T> ps;
  ps.k = ex.k;
  ps.q = q;
  ps.qm = ipow(q, ex.D.size());
  ps.D = ex.D;
  for (auto e : ex.P) ps.P.push_back(pw(e));
  std::vector<T> s0;
  for (auto e : ex.S0) s0.push_back(pw(e));
  ps.S0 = Snapshot<T>(std::move(s0));
  return ps;
}

/// tau = -log2(ln 2).
Real tau_constant();
/// Effective epsilon x as a fraction of tau, with efficiency = (1 + eps) ln 4
/// and x = log2 k. Negative means better than ln 4.
Real effective_eps_fraction(Real efficiency, std::int64_t k);

struct TableRow {
  std::int64_t k = 0;
  int t = 0;
  Real efficiency = 0;
  std::string equation;
  Real q_half_power = 0;  // (q*)^{k/2}
  Real eps_fraction = 0;  // effective eps x / tau
  std::string eps_text;   // "38.63%" or "<0"
};

TableRow table_row(std::int64_t k);
/// k = 2^{t+1} for t in [t_lo, t_hi] (Table 2) or k = 2^{t+2} - 1 (Table 3).
std::vector<TableRow> recursive_table_serial(int which, int t_lo, int t_hi);
std::vector<TableRow> recursive_table_parallel(int which, int t_lo, int t_hi);

struct AsymptoticCertificate {
  std::int64_t k = 0;
  Real x = 0;
  Real gamma = 0;
  RateBreakdown at_gamma;
  bool theorem_conditions_hold = false;  // rate(e^gamma) <= gamma
  bool theorem_applies = false;          // k >= 2^13
  Real efficiency = 0;                   // at q*
  Real remark_bound = 0;                 // (1 + tau/x) ln 4
  bool remark_bound_holds = false;
  Real eps_fraction = 0;
};
AsymptoticCertificate asymptotic_certificate(std::int64_t k);

/// 1 - 2^{1-z}(1 + 3/x) ln 2 - 8^{z/x - 1}; positive on 13 <= x, 1 <= z <= x - 1.
Real gamma_case2_f(Real x, Real z);

}  // namespace pebble
