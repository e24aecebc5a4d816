#include "pebble/bounds.hpp"

#include <algorithm>

namespace pebble {

BoundingValue bounding_expression(const std::vector<Real>& R, Real horizon) {
  BoundingValue out;
  for (auto r : R) out.value += std::min(horizon, r);
  return out;
}

LowerBound lower_bound_weak(std::size_t k) {
  if (k < 3) throw InvalidInput("the weak bound needs k >= 3");
  if (k % 2 == 1) {
    LowerBound even = lower_bound_weak(k + 1);
    return {even.value * static_cast<Real>(k) / static_cast<Real>(k + 1), k, true};
  }
  return {2 - std::log(2.0L) - 1 / static_cast<Real>(k - 2), k, false};
}

LowerBound lower_bound_strong(std::size_t k) {
  if (k < 2) throw InvalidInput("the strong bound needs k >= 2");
  if (k % 2 == 1) {
    LowerBound even = lower_bound_strong(k + 1);
    return {even.value * static_cast<Real>(k) / static_cast<Real>(k + 1), k, true};
  }
  const Real kk = static_cast<Real>(k);
  return {kk * (1 - std::pow(2.0L, -2 / kk)), k, false};
}

Real lower_bound_strong_explicit(std::size_t k) {
  if (k < 2) throw InvalidInput("the strong bound needs k >= 2");
  const Real ln2 = std::log(2.0L);
  return (1 - ln2 / static_cast<Real>(k)) * 2 * ln2;
}

Real asymptote_value(Real c, std::size_t k) {
  const Real kk = static_cast<Real>(k);
  if (!(c > 0) || !(c < kk)) throw InvalidInput("c must satisfy 0 < c < k");
  return std::pow(1 - c / kk, -kk / 2);
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Holds: return "holds";
    case CheckStatus::Violated: return "violated";
    case CheckStatus::Inapplicable: return "inapplicable";
  }
  return "?";
}

namespace {

InequalityCheck make_check(std::string name, Real lhs, Real rhs, Real slack) {
  InequalityCheck c{std::move(name), CheckStatus::Holds, lhs, rhs, {}};
  if (lhs > rhs + slack * std::max<Real>(1, std::fabs(rhs))) c.status = CheckStatus::Violated;
  return c;
}

InequalityCheck inapplicable(std::string name, std::string why) {
  InequalityCheck c;
  c.name = std::move(name);
  c.status = CheckStatus::Inapplicable;
  c.note = std::move(why);
  return c;
}

struct Efficiency {
  bool ok = false;
  Real measured = 0;
};

Efficiency recheck(const LabeledTrace<Real>& lt, Real c, const PropertyOptions& opt) {
  const auto rep = measured_efficiency(lt.trace, opt.include_initial);
  return {rep.worst_ratio <= c * (1 + opt.slack), rep.worst_ratio};
}

}  // namespace

InequalityCheck be_upper_check(Real be2, Real b, std::size_t s, std::size_t k) {
  const std::string name = "be_upper(s=" + std::to_string(s) + ")";
  if (s < 1 || 2 * s > k) return inapplicable(name, "s outside 1..k/2");
  const Real grow = std::pow(1 - b, -static_cast<Real>(s));
  if (grow > 2) return inapplicable(name, "(1-b)^{-s} > 2");
  return make_check(name, b * be2, grow - 1, 1e-12L);
}

std::size_t PropertyReport::violations() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::Violated; }));
}

std::size_t PropertyReport::applicable() const {
  return static_cast<std::size_t>(std::count_if(
      checks.begin(), checks.end(), [](const auto& c) { return c.status != CheckStatus::Inapplicable; }));
}

PropertyReport verify_properties(const LabeledTrace<Real>& lt, Real c, std::size_t n, const PropertyOptions& opt) {
  const std::size_t k = lt.trace.k;
  const std::size_t half = k / 2;
  const Real b = c / static_cast<Real>(k);
  PropertyReport rep;
  rep.anchor = n;
  const Efficiency eff = recheck(lt, c, opt);
  rep.efficient = eff.ok;
  rep.measured_c = eff.measured;
  if (!eff.ok) {
    rep.checks.push_back(inapplicable("efficiency", "trace is not c-efficient"));
    return rep;
  }
  const StabilityOrder st = stability_order(lt, n);
  rep.stability = st.s;
  if (st.s < half) {
    rep.checks.push_back(inapplicable("stability", "anchor is only " + std::to_string(st.s) + "-stable"));
    return rep;
  }
  const auto norm = normalize_at(lt, n);
  const auto rs = removal_times(norm, n, half);
  for (const auto& r : rs.R) rep.R.push_back(r);
  const auto be = bounding_expression(rs, half, opt.horizon);
  rep.be2 = be.value;
  rep.be_exact = be.exact;
  if (!be.exact) {
    rep.checks.push_back(inapplicable("horizon", "trace ends before the removals are decided"));
    return rep;
  }
  const Real tol = opt.slack;

  rep.checks.push_back(make_check("be_at_least_1", 1, b * be.value, tol));
  for (std::size_t i = 1; i < rs.R.size(); ++i) {
    rep.checks.push_back(make_check("ri_bounded(i=" + std::to_string(i) + ")", rs.R[i],
                                    1 / (1 - b * static_cast<Real>(i)), tol));
  }
  if (b < 0.5L) {
    const Real rhs = std::log(2.0L) + b / (1 - 2 * b) + b * static_cast<Real>(k) - 1;
    rep.checks.push_back(make_check("be_weak_upper", b * be.value, rhs, tol));
  } else {
    rep.checks.push_back(inapplicable("be_weak_upper", "b >= 1/2"));
  }
  for (std::size_t s = 1; s <= half; ++s) {
    const auto v = bounding_expression(rs, s, opt.horizon);
    auto chk = be_upper_check(v.value, b, s, k);
    if (chk.status == CheckStatus::Violated) {
      chk = make_check(chk.name, chk.lhs, chk.rhs, tol);
    }
    rep.checks.push_back(std::move(chk));
  }
  return rep;
}

InequalityCheck verify_be_upper(const LabeledTrace<Real>& lt, Real c, std::size_t n, std::size_t s,
                                const PropertyOptions& opt) {
  const std::string name = "be_upper(s=" + std::to_string(s) + ")";
  const Efficiency eff = recheck(lt, c, opt);
  if (!eff.ok) return inapplicable(name, "trace is not c-efficient (measured " + format_real(eff.measured, 10) + ")");
  const std::size_t k = lt.trace.k;
  const Real b = c / static_cast<Real>(k);
  if (std::pow(1 - b, -static_cast<Real>(s)) > 2 || s < 1 || 2 * s > k) {
    return be_upper_check(0, b, s, k);
  }
  const StabilityOrder st = stability_order(lt, n);
  if (st.s < s) return inapplicable(name, "anchor is only " + std::to_string(st.s) + "-stable");
  const auto norm = normalize_at(lt, n);
  const auto rs = removal_times(norm, n, s);
  const auto be = bounding_expression(rs, s, opt.horizon);
  if (!be.exact) return inapplicable(name, "trace ends before the removals are decided");
  auto chk = be_upper_check(be.value, b, s, k);
  if (chk.status == CheckStatus::Violated) chk = make_check(name, chk.lhs, chk.rhs, opt.slack);
  return chk;
}

}  // namespace pebble
