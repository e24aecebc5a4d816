#include "pebble/recursive.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace pebble {

RecursionKey::RecursionKey(std::vector<std::int64_t> elements) : el_(std::move(elements)) {
  std::sort(el_.begin(), el_.end(), std::greater<>());
  if (el_.empty() || el_.back() != 0) el_.push_back(0);
  if (el_.size() < 2) throw InvalidInput("recursion key needs k >= 1");
  for (std::size_t i = 1; i < el_.size(); ++i) {
    if (el_[i] == el_[i - 1]) throw InvalidInput("recursion key elements must be distinct");
  }
  if (el_.back() < 0 || el_[el_.size() - 2] <= 0) throw InvalidInput("recursion key elements must be positive");
  if (el_.front() < 2) throw InvalidInput("recursion key needs k >= 2");
}

RecursionKey RecursionKey::inner() const {
  if (t() < 1) throw InvalidInput("round-robin key has no inner scheme");
  std::vector<std::int64_t> e = el_;
  e.erase(e.begin() + 1);
  return RecursionKey(std::move(e));
}

std::string RecursionKey::to_string() const {
  std::string s = "{";
  for (std::size_t i = el_.size(); i-- > 0;) {
    s += std::to_string(el_[i]);
    if (i) s += ",";
  }
  return s + "}";
}

std::vector<std::size_t> device_sequence(const RecursionKey& K) {
  const int t = K.t();
  const std::size_t m = std::size_t{1} << t;
  std::vector<std::size_t> D(m);
  for (std::size_t n = 1; n <= m; ++n) {
    int mu = 0;
    while (mu < t && n % (std::size_t{1} << (mu + 1)) == 0) ++mu;
    D[n - 1] = static_cast<std::size_t>(1 + K[static_cast<std::size_t>(mu + 1)]);
  }
  return D;
}

std::int64_t exponent_e(const RecursionKey& K, int l) {
  if (l < 0 || l > K.t()) throw InvalidInput("exponent_e level outside 0..t");
  std::int64_t e = 0;
  for (int i = 0; i <= l; ++i) {
    e += (std::int64_t{1} << i) * (K[static_cast<std::size_t>(i)] - K[static_cast<std::size_t>(i + 1)]);
  }
  return e;
}

namespace {

struct KeyCache {
  std::vector<std::int64_t> e;  // e(0..t)
  int t;
};

KeyCache cache_for(const RecursionKey& K) {
  KeyCache c;
  c.t = K.t();
  std::int64_t acc = 0;
  for (int i = 0; i <= c.t; ++i) {
    acc += (std::int64_t{1} << i) * (K[static_cast<std::size_t>(i)] - K[static_cast<std::size_t>(i + 1)]);
    c.e.push_back(acc);
  }
  return c;
}

Real cond2_at(Real u, std::int64_t e, int l) {
  const Real p = std::ldexp(Real(1), l);
  return std::exp(-static_cast<Real>(e) * u) * 2 * std::sinh(p * u);
}

Real cond3_at(Real u, const KeyCache& c) {
  return std::exp((std::ldexp(Real(1), c.t) - static_cast<Real>(c.e[static_cast<std::size_t>(c.t)])) * u);
}

RateBreakdown breakdown(Real u, const KeyCache& c) {
  RateBreakdown b;
  b.cond1 = -std::expm1(-u);
  b.rate = b.cond1;
  b.binding = 1;
  for (int l = 0; l < c.t; ++l) {
    const Real v = cond2_at(u, c.e[static_cast<std::size_t>(l)], l);
    b.cond2.push_back(v);
    if (v > b.rate) {
      b.rate = v;
      b.binding = 2;
      b.binding_level = l;
    }
  }
  b.cond3 = cond3_at(u, c);
  if (b.cond3 > b.rate) {
    b.rate = b.cond3;
    b.binding = 3;
    b.binding_level = -1;
  }
  return b;
}

}  // namespace

RateBreakdown rate_log(Real u, const RecursionKey& K) {
  if (!(u > 0)) throw InvalidInput("rate needs q > 1");
  return breakdown(u, cache_for(K));
}

RecursionKey kstar(std::int64_t k) {
  if (k < 2) throw InvalidInput("K* needs k >= 2");
  int lg = 0;
  while ((std::int64_t{2} << lg) <= k) ++lg;  // floor(log2 k)
  const int t = lg - 1;
  std::vector<std::int64_t> el;
  for (int i = 0; i <= t; ++i) el.push_back(k >> i);
  el.push_back(0);
  return RecursionKey(std::move(el));
}

std::string CrossingEquation::text() const {
  auto mono = [](std::int64_t e) -> std::string {
    if (e == 0) return "1";
    if (e == 1) return "x";
    return "x^" + std::to_string(e);
  };
  if (kind == 3) {
    // x^a - x^(a-1) - 1
    if (a == 1) return "x-2";
    return mono(a) + "-" + mono(a - 1) + "-1";
  }
  // (x^A - x^(A-1) - x^B + 1)/(x - 1) = x^(A-1) - (x^(B-1) + ... + 1)
  std::string s = mono(A - 1);
  if (B <= 3) {
    for (std::int64_t i = B - 1; i >= 0; --i) s += "-" + mono(i);
  } else {
    s += "-(" + mono(B) + "-1)/(x-1)";
  }
  return s;
}

Polynomial CrossingEquation::polynomial() const {
  if (kind == 3) {
    std::vector<Rational> c(static_cast<std::size_t>(a + 1), Rational(0));
    c[static_cast<std::size_t>(a)] += 1;
    c[static_cast<std::size_t>(a - 1)] -= 1;
    c[0] -= 1;
    return Polynomial(std::move(c));
  }
  std::vector<Rational> c(static_cast<std::size_t>(A), Rational(0));
  c[static_cast<std::size_t>(A - 1)] += 1;
  for (std::int64_t i = 0; i < B; ++i) c[static_cast<std::size_t>(i)] -= 1;
  return Polynomial(std::move(c));
}

namespace {

CrossingEquation equation_for(int kind, int level, const KeyCache& c) {
  CrossingEquation eq;
  eq.kind = kind;
  eq.level = level;
  if (kind == 3) {
    eq.a = c.e[static_cast<std::size_t>(c.t)] - (std::int64_t{1} << c.t);
  } else {
    eq.A = c.e[static_cast<std::size_t>(level)] + (std::int64_t{1} << level);
    eq.B = std::int64_t{2} << level;
  }
  return eq;
}

// Bisection on a sign change of f over [a, b].
template <class F>
Real bisect(F f, Real a, Real b) {
  Real fa = f(a);
  for (int it = 0; it < 200 && b - a > a * 1e-19L; ++it) {
    const Real mid = (a + b) / 2;
    const Real fm = f(mid);
    if (fm == 0) return mid;
    if ((fm < 0) == (fa < 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return (a + b) / 2;
}

// Golden-section minimisation of a unimodal function on [a, b].
template <class F>
Real golden(F f, Real a, Real b) {
  const Real g = (std::sqrt(Real(5)) - 1) / 2;
  Real x1 = b - g * (b - a), x2 = a + g * (b - a);
  Real f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && b - a > a * 1e-18L; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  return (a + b) / 2;
}

}  // namespace

OptimizeResult optimize_q(const RecursionKey& K, Real tol) {
  const KeyCache c = cache_for(K);
  const Real k = static_cast<Real>(K.k());
  const Real lo = 1e-4L / k;
  const Real hi = std::min<Real>(40 / k, 5);
  const int N = 4096;
  std::vector<Real> us(N + 1), F(N + 1);
  for (int i = 0; i <= N; ++i) {
    us[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<Real>(i) / N);
    F[static_cast<std::size_t>(i)] = breakdown(us[static_cast<std::size_t>(i)], c).rate;
  }
  auto rate_at = [&c](Real u) { return breakdown(u, c).rate; };

  struct Cand {
    Real u;
    Real r;
    int kind;
    int level;
  };
  std::vector<Cand> cands;
  auto consider = [&](Real u, int kind, int level) { cands.push_back({u, rate_at(u), kind, level}); };

  // Crossings of cond1 with every other condition, not only the usual two.
  for (int j = -1; j < c.t; ++j) {
    auto g = [&, j](Real u) {
      const Real other = j < 0 ? cond3_at(u, c) : cond2_at(u, c.e[static_cast<std::size_t>(j)], j);
      return -std::expm1(-u) - other;
    };
    Real prev = g(us[0]);
    for (int i = 1; i <= N; ++i) {
      const Real cur = g(us[static_cast<std::size_t>(i)]);
      if ((prev < 0) != (cur < 0)) {
        consider(bisect(g, us[static_cast<std::size_t>(i - 1)], us[static_cast<std::size_t>(i)]), j < 0 ? 3 : 2, j);
      }
      prev = cur;
    }
  }
  // Local minima of the sampled max, for optima where cond1 is not active.
  for (int i = 1; i < N; ++i) {
    const auto s = static_cast<std::size_t>(i);
    if (F[s] <= F[s - 1] && F[s] <= F[s + 1]) {
      const Real u = golden(rate_at, us[s - 1], us[s + 1]);
      consider(u, 0, -2);  // interior minimum, not a cond1 crossing
    }
  }
  const Cand* best = nullptr;
  const Cand* global = nullptr;
  for (const auto& cd : cands) {
    if (!global || cd.r < global->r) global = &cd;
    if (cd.kind == 1 || cd.level == -2) continue;
    const Real c1 = -std::expm1(-cd.u);
    if (c1 < cd.r * (1 - 1e-12L)) continue;  // cond1 not binding here
    if (!best || cd.r < best->r) best = &cd;
  }
  if (!best) throw std::runtime_error("optimize_q found no crossing where 1 - 1/q binds");
  for (int i = 0; i <= N; ++i) {
    if (F[static_cast<std::size_t>(i)] < global->r * (1 - 1e-9L)) {
      // A sampled point beats every refined candidate; should not happen.
      throw std::runtime_error("optimize_q: refinement missed the sampled minimum");
    }
  }

  OptimizeResult out;
  out.u = best->u;
  out.q = std::exp(best->u);
  out.breakdown = breakdown(best->u, c);
  out.efficiency = k * out.breakdown.rate;
  out.equation = equation_for(best->kind, best->level, c);
  const Real step = std::max<Real>(tol, 1e-15L) * best->u;
  const Real slack = 1e-15L * out.breakdown.rate;
  out.validated = rate_at(best->u + step) >= out.breakdown.rate - slack &&
                  rate_at(best->u - step) >= out.breakdown.rate - slack;
  out.global_u = global->u;
  out.global_q = std::exp(global->u);
  out.global_efficiency = k * global->r;
  out.cond1_binding_is_global = out.efficiency - out.global_efficiency <= 1e-12L * out.efficiency;
  return out;
}

ExponentScheme periodic_exponents(const RecursionKey& K) {
  const auto D = device_sequence(K);
  const std::size_t k = static_cast<std::size_t>(K.k());
  const std::size_t m = D.size();
  for (auto d : D) {
    if (d + 1 > k) throw InvalidInput("key updates the newest device (k_1 must be <= k - 2)");
  }
  std::vector<std::int64_t> snap(k);
  for (std::size_t i = 0; i < k; ++i) snap[i] = static_cast<std::int64_t>(i + 1);
  std::int64_t clock = static_cast<std::int64_t>(k);
  const std::size_t max_periods = 4 * (k + 1);
  for (std::size_t j = 1; j <= max_periods; ++j) {
    const auto before = snap;
    std::vector<std::int64_t> times;
    for (std::size_t n = 0; n < m; ++n) {
      snap.erase(snap.begin() + static_cast<std::ptrdiff_t>(D[n] - 1));
      snap.push_back(++clock);
      times.push_back(clock);
    }
    bool periodic = true;
    for (std::size_t i = 0; i < k && periodic; ++i) {
      periodic = snap[i] == before[i] + static_cast<std::int64_t>(m);
    }
    if (periodic) {
      ExponentScheme ex;
      ex.k = k;
      ex.D = D;
      const std::int64_t base = before.back();
      for (auto v : before) ex.S0.push_back(v - base);
      for (auto v : times) ex.P.push_back(v - base);
      ex.warmup_periods = j - 1;
      return ex;
    }
  }
  throw std::runtime_error("B(q, K) did not become periodic within " + std::to_string(max_periods) +
                           " periods for K = " + K.to_string());
}

Real tau_constant() { return -std::log2(std::log(Real(2))); }

Real effective_eps_fraction(Real efficiency, std::int64_t k) {
  const Real eps = efficiency / std::log(Real(4)) - 1;
  const Real x = std::log2(static_cast<Real>(k));
  return eps * x / tau_constant();
}

namespace {

std::string percent_text(Real frac) {
  if (frac < 0) return "<0";
  const Real pct = frac * 100;
  int decimals = 3;
  if (pct >= 10) decimals = 2;
  if (pct >= 100) decimals = 1;
  if (pct < 1) decimals = 4;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lf%%", decimals, pct);
  return buf;
}

}  // namespace

TableRow table_row(std::int64_t k) {
  const RecursionKey K = kstar(k);
  const auto opt = optimize_q(K);
  TableRow row;
  row.k = k;
  row.t = K.t();
  row.efficiency = opt.efficiency;
  row.equation = opt.equation.text();
  row.q_half_power = std::exp(opt.u * static_cast<Real>(k) / 2);
  row.eps_fraction = effective_eps_fraction(opt.efficiency, k);
  row.eps_text = percent_text(row.eps_fraction);
  return row;
}

namespace {

std::int64_t table_k(int which, int t) {
  if (which == 2) return std::int64_t{2} << t;
  if (which == 3) return (std::int64_t{4} << t) - 1;
  throw InvalidInput("table must be 2 or 3");
}

}  // namespace

std::vector<TableRow> recursive_table_serial(int which, int t_lo, int t_hi) {
  std::vector<TableRow> rows;
  for (int t = t_lo; t <= t_hi; ++t) rows.push_back(table_row(table_k(which, t)));
  return rows;
}

std::vector<TableRow> recursive_table_parallel(int which, int t_lo, int t_hi) {
  if (t_hi < t_lo) return {};
  std::vector<TableRow> rows(static_cast<std::size_t>(t_hi - t_lo + 1));
  for (int t = t_lo; t <= t_hi; ++t) (void)table_k(which, t);  // validate before the parallel region
#pragma omp parallel for schedule(dynamic)
  for (int t = t_lo; t <= t_hi; ++t) rows[static_cast<std::size_t>(t - t_lo)] = table_row(table_k(which, t));
  return rows;
}

AsymptoticCertificate asymptotic_certificate(std::int64_t k) {
  AsymptoticCertificate a;
  const RecursionKey K = kstar(k);
  a.k = k;
  a.x = std::log2(static_cast<Real>(k));
  a.gamma = (1 + 3 / a.x) * std::log(Real(4)) / static_cast<Real>(k);
  a.at_gamma = rate_log(a.gamma, K);
  a.theorem_conditions_hold = a.at_gamma.rate <= a.gamma;
  a.theorem_applies = k >= (1 << 13);
  a.efficiency = optimize_q(K).efficiency;
  a.remark_bound = (1 + tau_constant() / a.x) * std::log(Real(4));
  a.remark_bound_holds = a.efficiency <= a.remark_bound;
  a.eps_fraction = effective_eps_fraction(a.efficiency, k);
  return a;
}

Real gamma_case2_f(Real x, Real z) {
  return 1 - std::pow(Real(2), 1 - z) * (1 + 3 / x) * std::log(Real(2)) - std::pow(Real(8), z / x - 1);
}

}  // namespace pebble
