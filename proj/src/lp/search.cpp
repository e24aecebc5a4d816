#include "pebble/lp/search.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include <omp.h>

namespace pebble::lp {

bool is_witness(const Rational& c, const std::vector<std::size_t>& D, std::size_t k, const BuildOptions& opt) {
  return feasible(build_L(c, D, k, opt)).status == Status::Infeasible;
}

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Blocking: return "blocking";
    case SearchStatus::OpenPath: return "open_path";
    case SearchStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

struct NodeEval {
  bool witness = false;
  bool exact_fallback = false;
  Certificate certificate;
  std::vector<Rational> point;  // only filled at the depth limit
};

// Only witnesses need proof; a float "feasible" just means we keep going.
NodeEval eval_node(const Rational& c, const std::vector<std::size_t>& D, std::size_t k, const BuildOptions& opt,
                   bool at_limit) {
  NodeEval e;
  const LinearProgram lp = build_L(c, D, k, opt);
  const FloatVerdict v = feasible_float(lp);
  if (!v.feasible) {
    if (auto cert = certify_infeasible(lp, v)) {
      e.witness = true;
      e.certificate = std::move(*cert);
      return e;
    }
    e.exact_fallback = true;
    FeasibilityResult r = feasible_exact(lp);
    if (r.status == Status::Infeasible) {
      e.witness = true;
      e.certificate = std::move(r.certificate);
      return e;
    }
    e.point = std::move(r.point);
    return e;
  }
  if (at_limit) {
    if (auto x = certify_feasible(lp, v)) {
      e.point = std::move(*x);
      return e;
    }
    e.exact_fallback = true;
    FeasibilityResult r = feasible_exact(lp);
    if (r.status == Status::Infeasible) {
      e.witness = true;
      e.certificate = std::move(r.certificate);
    } else {
      e.point = std::move(r.point);
    }
  }
  return e;
}

void check_search_args(const Rational& c, std::size_t k) {
  if (k < 2) throw InvalidInput("k must be >= 2");
  if (!(c > 0) || !(c < Rational(static_cast<long>(k)))) throw InvalidInput("c must satisfy 0 < c < k");
}

struct Dfs {
  const Rational& c;
  std::size_t k;
  const BlockingOptions& opt;
  BlockingResult& res;
  std::vector<std::size_t> D;

  // false aborts the search (open path or budget)
  bool visit() {
    if (res.lp_solves >= opt.lp_budget) {
      res.status = SearchStatus::Inconclusive;
      return false;
    }
    ++res.lp_solves;
    const bool at_limit = D.size() >= opt.depth_limit;
    NodeEval e = eval_node(c, D, k, opt.build, at_limit);
    res.exact_fallbacks += e.exact_fallback;
    if (e.witness) {
      res.witnesses.push_back({D, std::move(e.certificate)});
      res.max_depth = std::max(res.max_depth, D.size());
      return true;
    }
    if (at_limit) {
      res.status = SearchStatus::OpenPath;
      res.open_path = D;
      res.open_point = std::move(e.point);
      return false;
    }
    for (std::size_t d = 1; d < k; ++d) {
      D.push_back(d);
      if (!visit()) return false;
      D.pop_back();
    }
    return true;
  }
};

}  // namespace

BlockingResult find_blocking_set(const Rational& c, std::size_t k, const BlockingOptions& opt) {
  check_search_args(c, k);
  BlockingResult res;
  res.c = c;
  res.k = k;
  Dfs dfs{c, k, opt, res, {}};
  if (dfs.visit()) res.status = SearchStatus::Blocking;
  return res;
}

BlockingResult find_blocking_set_parallel(const Rational& c, std::size_t k, const BlockingOptions& opt) {
  check_search_args(c, k);
  BlockingResult res;
  res.c = c;
  res.k = k;
  std::vector<std::vector<std::size_t>> frontier{{}};
  for (std::size_t depth = 0; !frontier.empty(); ++depth) {
    if (res.lp_solves + frontier.size() > opt.lp_budget) {
      res.status = SearchStatus::Inconclusive;
      return res;
    }
    const bool at_limit = depth >= opt.depth_limit;
    std::vector<NodeEval> evals(frontier.size());
    std::exception_ptr failure;
    const auto n = static_cast<long>(frontier.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) {
      try {
        evals[static_cast<std::size_t>(i)] = eval_node(c, frontier[static_cast<std::size_t>(i)], k, opt.build, at_limit);
      } catch (...) {
#pragma omp critical(pebble_blocking_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    res.lp_solves += frontier.size();

    std::vector<std::vector<std::size_t>> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      NodeEval& e = evals[i];
      res.exact_fallbacks += e.exact_fallback;
      if (e.witness) {
        res.witnesses.push_back({frontier[i], std::move(e.certificate)});
        res.max_depth = std::max(res.max_depth, frontier[i].size());
        continue;
      }
      if (at_limit) {
        // Frontier is in lexicographic order, so this is the path the
        // depth-first search reports.
        res.status = SearchStatus::OpenPath;
        res.open_path = frontier[i];
        res.open_point = std::move(e.point);
        std::sort(res.witnesses.begin(), res.witnesses.end(),
                  [](const Witness& a, const Witness& b) { return a.D < b.D; });
        return res;
      }
      for (std::size_t d = 1; d < k; ++d) {
        next.push_back(frontier[i]);
        next.back().push_back(d);
      }
    }
    frontier = std::move(next);
  }
  std::sort(res.witnesses.begin(), res.witnesses.end(), [](const Witness& a, const Witness& b) { return a.D < b.D; });
  res.status = SearchStatus::Blocking;
  return res;
}

// ---------------------------------------------------------------------------
// Periodic upper bounds

namespace {

const mpz_class kFloatDen("1000000000000");  // 1e12

std::vector<std::size_t> repeat(const std::vector<std::size_t>& D, std::size_t times) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < times; ++i) out.insert(out.end(), D.begin(), D.end());
  return out;
}

bool float_feasible(const LinearProgram& lp) { return feasible_float(lp).feasible; }

Rational ceil_to(Real x, long den) {
  Rational r(mpz_class(static_cast<long>(std::ceil(x * static_cast<Real>(den)))), mpz_class(den));
  r.canonicalize();
  return r;
}

}  // namespace

Real estimate_q(const Rational& c, const std::vector<std::size_t>& D, std::size_t k) {
  if (D.empty()) throw InvalidInput("D must be non-empty");
  const std::size_t m = D.size();
  const LinearProgram lp = build_L(c, repeat(D, 10), k);
  std::vector<Rational> obj(lp.num_vars(), Rational(0));
  obj[t_var(k, 10 * m)] = -1;
  auto x = minimize_float(lp, obj);
  if (!x) throw InfeasibleProgram("L_10m(c; D^10) is infeasible at c = " + format_rational(c));
  const Real hi = (*x)[t_var(k, 10 * m)];
  const Real lo = (*x)[t_var(k, 9 * m)];
  if (!(lo > 0)) throw InfeasibleProgram("degenerate point in estimate_q");
  return std::pow(hi / lo, 1.0L / static_cast<Real>(m));
}

bool lstar_feasible_float(Real c, Real q, const std::vector<std::size_t>& D, std::size_t k,
                          const BuildOptions& opt) {
  if (!(q > 1) || !(c > 0) || !(c < static_cast<Real>(k))) return false;
  return float_feasible(build_Lstar(rationalize(c, kFloatDen), rationalize(q, kFloatDen), D, k, opt));
}

PeriodicFit min_c_periodic(const std::vector<std::size_t>& D, std::size_t k, const PeriodicOptions& opt) {
  check_program_args(Rational(1), D, k);
  if (D.empty()) throw InvalidInput("D must be non-empty");
  const Real K = static_cast<Real>(k);
  const Real inf = std::numeric_limits<Real>::infinity();
  PeriodicFit fit;
  fit.D = D;
  fit.k = k;

  // Least c for which L*(c, q; D) is float-feasible, by bisection on c.
  // Any such c has q <= k/(k-c), i.e. c >= k(1 - 1/q).
  auto cmin = [&](Real q) -> Real {
    if (!(q > 1)) return inf;
    Real lo = K * (1 - 1 / q);
    Real hi = std::min<Real>(2, K - 1e-3L);
    if (lo >= hi) return inf;
    ++fit.lp_solves;
    if (!lstar_feasible_float(hi, q, D, k, opt.build)) return inf;
    ++fit.lp_solves;
    if (lstar_feasible_float(lo, q, D, k, opt.build)) return lo;
    while (hi - lo > opt.tol) {
      const Real mid = (lo + hi) / 2;
      ++fit.lp_solves;
      (lstar_feasible_float(mid, q, D, k, opt.build) ? hi : lo) = mid;
    }
    return hi;
  };

  const Real qmax = k > 2 ? K / (K - 2) : 4.0L;
  const Real lqmin = std::log(1.0L + 1e-4L), lqmax = std::log(qmax);
  const std::size_t G = std::max<std::size_t>(opt.grid, 3);
  std::vector<Real> grid_q(G), grid_c(G);
  for (std::size_t i = 0; i < G; ++i) {
    grid_q[i] = std::exp(lqmin + (lqmax - lqmin) * static_cast<Real>(i) / static_cast<Real>(G - 1));
    grid_c[i] = cmin(grid_q[i]);
  }
  const std::size_t best = static_cast<std::size_t>(std::min_element(grid_c.begin(), grid_c.end()) - grid_c.begin());
  if (!std::isfinite(grid_c[best])) throw InfeasibleProgram("no q makes L*(2, q; D) feasible");

  // Golden-section search on ln q between the neighbours of the best grid point.
  Real a = std::log(grid_q[best == 0 ? 0 : best - 1]);
  Real b = std::log(grid_q[std::min(best + 1, G - 1)]);
  const Real phi = (std::sqrt(5.0L) - 1) / 2;
  Real x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  Real f1 = cmin(std::exp(x1)), f2 = cmin(std::exp(x2));
  Real best_q = grid_q[best], best_c = grid_c[best];
  for (int it = 0; it < 60 && b - a > 1e-12L; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = cmin(std::exp(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = cmin(std::exp(x2));
    }
    if (f1 < best_c) best_c = f1, best_q = std::exp(x1);
    if (f2 < best_c) best_c = f2, best_q = std::exp(x2);
  }

  // The estimate from the long truncated program, used as one more seed.
  try {
    fit.q_estimate = estimate_q(ceil_to(best_c + 1e-7L, 1000000000L), D, k);
    ++fit.lp_solves;
    const Real ce = cmin(fit.q_estimate);
    if (ce < best_c) best_c = ce, best_q = fit.q_estimate;
  } catch (const InfeasibleProgram&) {
    fit.q_estimate = 0;
  }
  fit.c_float = best_c;

  // Exact certification with a strictly increasing point.
  const Rational qr = rationalize(best_q, mpz_class(100000000));
  BuildOptions strict = opt.build;
  strict.strict_margin = Rational(1, 1000000000000L);
  for (int j = 0; j < 40; ++j) {
    const Real bump = j == 0 ? 0 : 1e-9L * std::ldexp(1.0L, (j - 1) / 2);
    const Rational cr = ceil_to(best_c + bump, 1000000000L);
    if (!(cr < Rational(static_cast<long>(k)))) break;
    const LinearProgram lp = build_Lstar(cr, qr, D, k, strict);
    ++fit.lp_solves;
    FeasibilityResult r = feasible(lp);
    if (r.status != Status::Feasible) continue;
    fit.c = cr;
    fit.q = qr;
    PeriodicScheme<Rational> ps;
    ps.k = k;
    ps.q = qr;
    ps.qm = 1;
    for (std::size_t i = 0; i < D.size(); ++i) ps.qm *= qr;
    ps.D = D;
    std::vector<Rational> s0(r.point.begin(), r.point.begin() + static_cast<long>(k));
    ps.S0 = Snapshot<Rational>(std::move(s0));
    for (std::size_t n = 1; n <= D.size(); ++n) ps.P.push_back(r.point[t_var(k, n)]);
    fit.scheme = std::move(ps);
    return fit;
  }
  throw InfeasibleProgram("could not certify L*(c, q; D) near the float optimum");
}

// ---------------------------------------------------------------------------

namespace {

// Strictly smaller than every proper rotation (aperiodic, lexicographically
// least representative).
bool is_lyndon(const std::vector<std::size_t>& D) {
  const std::size_t m = D.size();
  for (std::size_t r = 1; r < m; ++r) {
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t a = D[i], b = D[(i + r) % m];
      if (a < b) break;
      if (a > b) return false;
      if (i + 1 == m) return false;  // equal rotation: not primitive
    }
  }
  return true;
}

}  // namespace

EnumerateResult enumerate_sequences(std::size_t k, std::size_t max_len, std::size_t node_budget) {
  if (k < 2) throw InvalidInput("k must be >= 2");
  if (max_len < 1) throw InvalidInput("max_len must be >= 1");
  EnumerateResult res;
  const PeriodicFit rr = min_c_periodic({1}, k);
  res.D = {1};
  res.c = rr.c;
  res.q = rr.q;
  res.complete = true;
  res.evaluated = 1;

  BuildOptions loose;
  loose.property5 = false;
  std::vector<std::size_t> D{1};
  // Recursive lambda over the tree of tuples that start with 1.
  auto visit = [&](auto&& self) -> void {
    if (res.nodes >= node_budget) {
      res.complete = false;
      return;
    }
    ++res.nodes;
    if (!float_feasible(build_L(res.c, D, k))) return;  // prefix is a witness at the incumbent
    if (D.size() >= 2 && is_lyndon(D)) {
      const Rational target = res.c - Rational(1, 10000000);
      if (float_feasible(build_L(target, repeat(D, 3), k, loose))) {
        ++res.evaluated;
        try {
          PeriodicFit fit = min_c_periodic(D, k);
          if (fit.c < res.c) {
            res.c = fit.c;
            res.q = fit.q;
            res.D = D;
          }
        } catch (const InfeasibleProgram&) {
        }
      }
    }
    if (D.size() >= max_len) return;
    for (std::size_t d = 1; d < k; ++d) {
      D.push_back(d);
      self(self);
      D.pop_back();
      if (res.nodes >= node_budget) {
        res.complete = false;
        return;
      }
    }
  };
  visit(visit);
  return res;
}

}  // namespace pebble::lp
