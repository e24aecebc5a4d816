#include "pebble/lp/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pebble::lp {

StandardLayout standard_layout(const LinearProgram& lp) {
  StandardLayout L;
  const std::size_t m = lp.num_rows();
  L.n = lp.num_vars();
  L.slack.assign(m, -1);
  L.art.assign(m, -1);
  L.sign.assign(m, 1);
  std::size_t col = L.n;
  for (std::size_t i = 0; i < m; ++i) {
    const Row& r = lp.rows()[i];
    L.sign[i] = sgn(r.rhs) < 0 ? -1 : 1;
    if (r.rel == Relation::LessEq) L.slack[i] = static_cast<long>(col++);
  }
  L.art_begin = col;
  for (std::size_t i = 0; i < m; ++i) {
    const Row& r = lp.rows()[i];
    const bool slack_basic = r.rel == Relation::LessEq && L.sign[i] > 0;
    if (!slack_basic) L.art[i] = static_cast<long>(col++);
  }
  L.cols = col;
  return L;
}

FloatVerdict feasible_float(const LinearProgram& lp) {
  DenseSimplex<Real> s(lp);
  auto out = s.run();
  FloatVerdict v;
  v.feasible = out.status == SimplexStatus::Feasible;
  v.x = std::move(out.x);
  v.lambda = std::move(out.lambda);
  v.basis = std::move(out.basis);
  return v;
}

std::optional<std::vector<Real>> minimize_float(const LinearProgram& lp, const std::vector<Rational>& objective) {
  DenseSimplex<Real> s(lp);
  auto out = s.run(&objective);
  if (out.status != SimplexStatus::Feasible) return std::nullopt;
  return out.x;
}

std::optional<Certificate> certify_infeasible(const LinearProgram& lp, const FloatVerdict& v) {
  if (v.feasible || v.lambda.size() != lp.num_rows()) return std::nullopt;
  Real scale = 0;
  for (auto l : v.lambda) scale = std::max(scale, std::fabs(l));
  if (!(scale > 0)) return std::nullopt;
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < v.lambda.size(); ++i) {
    if (std::fabs(v.lambda[i]) > 1e-9L * scale) support.push_back(i);
  }
  const LinearProgram sub = lp.restricted(support);
  DenseSimplex<Rational> exact(sub);
  auto out = exact.run();
  if (out.status != SimplexStatus::Infeasible) return std::nullopt;
  Certificate cert = certificate_from_multipliers(sub, out.lambda);
  if (!verify_certificate(lp, cert).valid) return std::nullopt;
  return cert;
}

namespace {

// Solves M y = b exactly (M square, dense); nullopt if singular.
std::optional<std::vector<Rational>> gauss_solve(std::vector<std::vector<Rational>> M, std::vector<Rational> b) {
  const std::size_t n = M.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && M[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(M[p], M[c]);
    std::swap(b[p], b[c]);
    const Rational inv = 1 / M[c][c];
    for (std::size_t j = c; j < n; ++j) {
      if (M[c][j] != 0) M[c][j] *= inv;
    }
    b[c] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || M[i][c] == 0) continue;
      const Rational f = M[i][c];
      for (std::size_t j = c; j < n; ++j) {
        if (M[c][j] != 0) M[i][j] -= f * M[c][j];
      }
      b[i] -= f * b[c];
    }
  }
  return b;
}

}  // namespace

std::optional<std::vector<Rational>> certify_feasible(const LinearProgram& lp, const FloatVerdict& v) {
  if (!v.feasible || v.basis.size() != lp.num_rows()) return std::nullopt;
  const StandardLayout L = standard_layout(lp);
  const std::size_t m = lp.num_rows();
  // Column of the (unflipped) standard form, restricted to the basis.
  std::vector<std::vector<Rational>> M(m, std::vector<Rational>(m, Rational(0)));
  std::vector<Rational> b(m);
  std::vector<long> slack_row(L.cols, -1);
  for (std::size_t i = 0; i < m; ++i) {
    if (L.slack[i] >= 0) slack_row[static_cast<std::size_t>(L.slack[i])] = static_cast<long>(i);
    if (L.art[i] >= 0) slack_row[static_cast<std::size_t>(L.art[i])] = static_cast<long>(i);
  }
  std::vector<long> basis_pos(L.n, -1);
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t col = v.basis[r];
    if (col < L.n) {
      basis_pos[col] = static_cast<long>(r);
    } else {
      const auto i = static_cast<std::size_t>(slack_row[col]);
      M[i][r] = col >= L.art_begin ? Rational(L.sign[i]) : Rational(1);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Row& row = lp.rows()[i];
    b[i] = row.rhs;
    for (const auto& [var, a] : row.coeffs) {
      if (basis_pos[var] >= 0) M[i][static_cast<std::size_t>(basis_pos[var])] = a;
    }
  }
  auto y = gauss_solve(std::move(M), std::move(b));
  if (!y) return std::nullopt;
  std::vector<Rational> x(L.n, Rational(0));
  for (std::size_t j = 0; j < L.n; ++j) {
    if (basis_pos[j] >= 0) x[j] = (*y)[static_cast<std::size_t>(basis_pos[j])];
  }
  if (!verify_point(lp, x).valid) return std::nullopt;
  return x;
}

FeasibilityResult feasible_exact(const LinearProgram& lp) {
  DenseSimplex<Rational> s(lp);
  auto out = s.run();
  FeasibilityResult res;
  res.used_full_exact = true;
  if (out.status == SimplexStatus::Feasible) {
    res.status = Status::Feasible;
    res.point = std::move(out.x);
    if (auto chk = verify_point(lp, res.point); !chk.valid) {
      throw std::logic_error("exact simplex returned an infeasible point: " + chk.reason);
    }
  } else if (out.status == SimplexStatus::Infeasible) {
    res.status = Status::Infeasible;
    res.certificate = certificate_from_multipliers(lp, out.lambda);
    const auto chk = verify_certificate(lp, res.certificate);
    if (!chk.valid) throw std::logic_error("exact simplex certificate failed: " + chk.reason);
  } else {
    throw std::logic_error("exact simplex did not terminate");
  }
  return res;
}

FeasibilityResult feasible(const LinearProgram& lp) {
  const FloatVerdict v = feasible_float(lp);
  FeasibilityResult res;
  if (v.feasible) {
    if (auto x = certify_feasible(lp, v)) {
      res.status = Status::Feasible;
      res.point = std::move(*x);
      return res;
    }
  } else if (!v.lambda.empty()) {
    if (auto c = certify_infeasible(lp, v)) {
      res.status = Status::Infeasible;
      res.certificate = std::move(*c);
      return res;
    }
  }
  return feasible_exact(lp);
}

}  // namespace pebble::lp
