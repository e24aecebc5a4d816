#pragma once

// The truncated programs L_N(c; D) and the periodic programs L*(c, q; D).
//
// Variables: T0_1..T0_k (indices 0..k-1), then t_1..t_N (index k+n-1),
// all >= 0. Row ids are stable strings so certificates can be archived:
//   mono:T0_j        T0_j <= T0_{j+1}
//   mono:t_1         T0_k <= t_1
//   mono:t_n         t_{n-1} <= t_n
//   norm             T0_k = 1
//   sub:n            t_n <= q_c t_{n-1}        (t_0 = T0_k), q_c = k/(k-c)
//   p5:n             q_c t_n <= t_{n+2}
//   p6:n             q_c^2 t_n <= t_{n+3}      (optional, when adjacent)
//   init:j           T0_j - T0_{j-1} <= (c/k) T0_k
//   merge:n          merged interval of S_n <= (c/k) t_n
//   per:j            S_m[j] - q^m T0_j = 0     (L* only)
// Strict inequalities are closed; strict_margin > 0 tightens the ordering
// rows by that amount when a strictly increasing point is wanted.

#include <cstddef>
#include <string>
#include <vector>

#include "pebble/lp/program.hpp"

namespace pebble::lp {

struct BuildOptions {
  bool property5 = true;
  bool property6 = false;
  bool initial_compliance = true;
  Rational strict_margin = 0;
  // L* only: Property 5 rows that wrap around the period, using
  // t_{n+m} = q^m t_n (ids "p5w:n").
  bool cyclic_property5 = false;
};

inline std::size_t t_var(std::size_t k, std::size_t n) { return k + n - 1; }

/// Symbolic replay: snapshot n (0..|D|) as variable indices, oldest first.
std::vector<std::vector<std::size_t>> symbolic_snapshots(const std::vector<std::size_t>& D, std::size_t k);

LinearProgram build_L(const Rational& c, const std::vector<std::size_t>& D, std::size_t k,
                      const BuildOptions& opt = {});
LinearProgram build_Lstar(const Rational& c, const Rational& q, const std::vector<std::size_t>& D, std::size_t k,
                          const BuildOptions& opt = {});

/// Throws InvalidInput unless D is over 1..k-1 and 0 < c < k.
void check_program_args(const Rational& c, const std::vector<std::size_t>& D, std::size_t k);

}  // namespace pebble::lp
