#pragma once

// Exact feasibility decisions with a floating-point fast path.
//
// The float simplex only proposes: an infeasible verdict is turned into an
// exact Farkas certificate by re-solving the rows it used in exact
// arithmetic; a feasible verdict is turned into an exact point by solving
// its final basis in rationals. Anything that fails to certify falls back
// to the full exact simplex, so the returned status is always exact.

#include <cstddef>
#include <optional>
#include <vector>

#include "pebble/lp/program.hpp"
#include "pebble/lp/simplex.hpp"

namespace pebble::lp {

enum class Status { Feasible, Infeasible };

struct FeasibilityResult {
  Status status = Status::Infeasible;
  std::vector<Rational> point;  // when feasible, verified against every row
  Certificate certificate;      // when infeasible, verified exactly
  bool used_full_exact = false;
};

/// Float-only verdict (no guarantee).
struct FloatVerdict {
  bool feasible = false;
  std::vector<Real> x;
  std::vector<Real> lambda;
  std::vector<std::size_t> basis;
};
FloatVerdict feasible_float(const LinearProgram& lp);

/// Minimises objective . x in floating point; nullopt when infeasible.
std::optional<std::vector<Real>> minimize_float(const LinearProgram& lp, const std::vector<Rational>& objective);

/// Exact certificate from a float infeasibility verdict, if its support
/// rows are already infeasible in exact arithmetic.
std::optional<Certificate> certify_infeasible(const LinearProgram& lp, const FloatVerdict& v);
/// Exact point from a float feasible verdict's basis, if it checks out.
std::optional<std::vector<Rational>> certify_feasible(const LinearProgram& lp, const FloatVerdict& v);

/// Pure exact simplex (reference path).
FeasibilityResult feasible_exact(const LinearProgram& lp);

/// Hybrid: exact answer, float speed when the certificates go through.
FeasibilityResult feasible(const LinearProgram& lp);

}  // namespace pebble::lp
