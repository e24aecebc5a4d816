#pragma once

// Dense two-phase tableau simplex, templated on the scalar (long double
// for speed, mpq for exact answers). Sized for the small programs of this
// problem family: a few hundred rows at most.
//
// Standard form: each <= row gets a slack; rows with negative rhs are
// negated; rows whose slack cannot start basic get an artificial.
// Phase 1 minimises the sum of artificials. On infeasibility the phase-1
// duals give a Farkas combination of the original rows.

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <vector>

#include "pebble/lp/program.hpp"

namespace pebble::lp {

template <class T>
struct SimplexNum;

template <>
struct SimplexNum<Real> {
  static Real from(const Rational& r) { return ScalarTraits<Real>::from_rational(r); }
  static bool pos(Real v) { return v > 1e-11L; }         // usable pivot / improving
  static bool neg(Real v) { return v < -1e-11L; }
  static bool zero_obj(Real v) { return v <= 1e-9L; }    // phase-1 optimum counts as zero
  static void clean(Real& v) {
    if (std::fabs(v) < 1e-15L) v = 0;
  }
};

template <>
struct SimplexNum<Rational> {
  static Rational from(const Rational& r) { return r; }
  static bool pos(const Rational& v) { return sgn(v) > 0; }
  static bool neg(const Rational& v) { return sgn(v) < 0; }
  static bool zero_obj(const Rational& v) { return sgn(v) == 0; }
  static void clean(Rational&) {}
};

enum class SimplexStatus { Feasible, Infeasible, Unbounded, IterationLimit };

template <class T>
struct SimplexOutcome {
  SimplexStatus status = SimplexStatus::IterationLimit;
  std::vector<T> x;       // original variables (feasible)
  std::vector<T> lambda;  // Farkas multipliers per original row (infeasible)
  std::vector<std::size_t> basis;  // basic standard-form column per row
  T objective{};  // phase-2 optimum, or the phase-1 infeasibility
  std::size_t pivots = 0;
};

/// Column layout of the standard form, shared with the exact basis solve.
struct StandardLayout {
  std::size_t n = 0;       // original variables
  std::size_t cols = 0;    // n + slacks + artificials
  std::size_t art_begin = 0;  // artificials occupy [art_begin, cols)
  std::vector<long> slack;   // per row, slack column or -1
  std::vector<long> art;     // per row, artificial column or -1
  std::vector<int> sign;     // per row, +1 or -1 (rhs made >= 0)
};

StandardLayout standard_layout(const LinearProgram& lp);

template <class T>
class DenseSimplex {
 public:
  explicit DenseSimplex(const LinearProgram& lp) : L_(standard_layout(lp)) {
    m_ = lp.num_rows();
    w_ = L_.cols + 1;
    tab_.assign(m_ * w_, T(0));
    basis_.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      const Row& row = lp.rows()[i];
      const int s = L_.sign[i];
      for (const auto& [v, a] : row.coeffs) at(i, v) = SimplexNum<T>::from(s > 0 ? a : Rational(-a));
      if (L_.slack[i] >= 0) at(i, static_cast<std::size_t>(L_.slack[i])) = T(s);
      if (L_.art[i] >= 0) at(i, static_cast<std::size_t>(L_.art[i])) = T(1);
      at(i, L_.cols) = SimplexNum<T>::from(s > 0 ? row.rhs : Rational(-row.rhs));
      basis_[i] = L_.art[i] >= 0 ? static_cast<std::size_t>(L_.art[i]) : static_cast<std::size_t>(L_.slack[i]);
    }
  }

  /// Feasibility only, or minimise objective . x when given.
  SimplexOutcome<T> run(const std::vector<Rational>* objective = nullptr) {
    SimplexOutcome<T> out;
    // Phase 1.
    std::vector<T> cost(L_.cols, T(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (L_.art[i] >= 0) cost[static_cast<std::size_t>(L_.art[i])] = T(1);
    }
    reduced_costs(cost);
    blocked_.assign(L_.cols, false);
    if (!iterate(out.pivots)) {
      out.status = SimplexStatus::IterationLimit;
      return out;
    }
    const T infeas = -d_[L_.cols];
    if (!SimplexNum<T>::zero_obj(infeas)) {
      out.status = SimplexStatus::Infeasible;
      out.objective = infeas;
      out.lambda.assign(m_, T(0));
      for (std::size_t i = 0; i < m_; ++i) {
        const bool has_art = L_.art[i] >= 0;
        const std::size_t u = has_art ? static_cast<std::size_t>(L_.art[i]) : static_cast<std::size_t>(L_.slack[i]);
        const T pi = (has_art ? T(1) : T(0)) - d_[u];
        out.lambda[i] = L_.sign[i] > 0 ? T(-pi) : pi;
      }
      out.basis = basis_;
      return out;
    }
    out.status = SimplexStatus::Feasible;
    if (objective) {
      drive_out_artificials(out.pivots);
      for (std::size_t i = 0; i < m_; ++i) {
        if (L_.art[i] >= 0) blocked_[static_cast<std::size_t>(L_.art[i])] = true;
      }
      std::vector<T> c2(L_.cols, T(0));
      for (std::size_t j = 0; j < L_.n; ++j) c2[j] = SimplexNum<T>::from((*objective)[j]);
      reduced_costs(c2);
      if (!iterate(out.pivots)) {
        out.status = unbounded_ ? SimplexStatus::Unbounded : SimplexStatus::IterationLimit;
        return out;
      }
      out.objective = -d_[L_.cols];
    }
    out.x.assign(L_.n, T(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < L_.n) out.x[basis_[i]] = at(i, L_.cols);
    }
    out.basis = basis_;
    return out;
  }

 private:
  T& at(std::size_t i, std::size_t j) { return tab_[i * w_ + j]; }

  void reduced_costs(const std::vector<T>& cost) {
    d_.assign(w_, T(0));
    for (std::size_t j = 0; j < L_.cols; ++j) d_[j] = cost[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const T cb = cost[basis_[i]];
      if (!SimplexNum<T>::pos(cb) && !SimplexNum<T>::neg(cb)) continue;
      for (std::size_t j = 0; j < w_; ++j) {
        const T& a = at(i, j);
        if (a != 0) d_[j] -= cb * a;
      }
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const T p = at(r, c);
    for (std::size_t j = 0; j < w_; ++j) {
      T& a = at(r, j);
      if (a != 0) a /= p;
    }
    at(r, c) = T(1);
    nz_.clear();
    for (std::size_t j = 0; j < w_; ++j) {
      if (at(r, j) != 0) nz_.push_back(j);
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const T f = at(i, c);
      if (f == 0) continue;
      for (auto j : nz_) {
        T& a = at(i, j);
        a -= f * at(r, j);
        SimplexNum<T>::clean(a);
      }
      at(i, c) = T(0);
    }
    const T f = d_[c];
    if (f != 0) {
      for (auto j : nz_) {
        d_[j] -= f * at(r, j);
        SimplexNum<T>::clean(d_[j]);
      }
      d_[c] = T(0);
    }
    basis_[r] = c;
  }

  // Returns false on iteration limit or unboundedness.
  bool iterate(std::size_t& pivots) {
    const std::size_t limit = 50 * (m_ + L_.cols) + 1000;
    std::size_t degenerate_run = 0;
    bool bland = std::is_same_v<T, Rational>;
    unbounded_ = false;
    for (std::size_t it = 0; it < limit; ++it) {
      // Entering column.
      long enter = -1;
      T best{};
      for (std::size_t j = 0; j < L_.cols; ++j) {
        if (blocked_[j] || !SimplexNum<T>::neg(d_[j])) continue;
        if (bland) {
          enter = static_cast<long>(j);
          break;
        }
        if (enter < 0 || d_[j] < best) {
          enter = static_cast<long>(j);
          best = d_[j];
        }
      }
      if (enter < 0) return true;
      const auto c = static_cast<std::size_t>(enter);
      long leave = -1;
      if constexpr (std::is_same_v<T, Rational>) {
        leave = ratio_exact(c);
      } else {
        leave = ratio_harris(c, bland);
      }
      T best_ratio{};
      if (leave >= 0) best_ratio = at(static_cast<std::size_t>(leave), L_.cols) / at(static_cast<std::size_t>(leave), c);
      if (leave < 0) {
        unbounded_ = true;
        return false;
      }
      if (SimplexNum<T>::pos(best_ratio)) {
        degenerate_run = 0;
      } else if (++degenerate_run > 50) {
        bland = true;  // anti-cycling
      }
      pivot(static_cast<std::size_t>(leave), c);
      if constexpr (!std::is_same_v<T, Rational>) {
        for (std::size_t i = 0; i < m_; ++i) {
          if (at(i, L_.cols) < 0) at(i, L_.cols) = 0;  // Harris slack
        }
      }
      ++pivots;
    }
    return false;
  }

  // Minimum ratio, ties to the smallest basic index (Bland).
  long ratio_exact(std::size_t c) {
    long leave = -1;
    T best{};
    for (std::size_t i = 0; i < m_; ++i) {
      const T& a = at(i, c);
      if (!SimplexNum<T>::pos(a)) continue;
      const T ratio = at(i, L_.cols) / a;
      if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[static_cast<std::size_t>(leave)])) {
        leave = static_cast<long>(i);
        best = ratio;
      }
    }
    return leave;
  }

  // Two-pass (Harris) ratio test: among rows whose ratio is within a small
  // feasibility slack of the minimum, take the largest pivot; tiny pivots
  // on degenerate rows otherwise wreck the tableau.
  long ratio_harris(std::size_t c, bool bland) {
    const T slack = T(1e-9L);
    T bound{};
    bool any = false;
    for (std::size_t i = 0; i < m_; ++i) {
      const T& a = at(i, c);
      if (!SimplexNum<T>::pos(a)) continue;
      const T r = (at(i, L_.cols) + slack) / a;
      if (!any || r < bound) bound = r, any = true;
    }
    if (!any) return -1;
    long leave = -1;
    T best_a{};
    for (std::size_t i = 0; i < m_; ++i) {
      const T& a = at(i, c);
      if (!SimplexNum<T>::pos(a) || at(i, L_.cols) / a > bound) continue;
      if (leave < 0 || a > best_a) leave = static_cast<long>(i), best_a = a;
    }
    if (bland) {
      // smallest basic index among the well-conditioned candidates
      long pick = -1;
      for (std::size_t i = 0; i < m_; ++i) {
        const T& a = at(i, c);
        if (!SimplexNum<T>::pos(a) || at(i, L_.cols) / a > bound || a < best_a * T(1e-3L)) continue;
        if (pick < 0 || basis_[i] < basis_[static_cast<std::size_t>(pick)]) pick = static_cast<long>(i);
      }
      leave = pick;
    }
    return leave;
  }

  void drive_out_artificials(std::size_t& pivots) {
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t b = basis_[i];
      if (!is_art(b)) continue;
      for (std::size_t j = 0; j < L_.cols; ++j) {
        if (is_art(j)) continue;
        if (SimplexNum<T>::pos(at(i, j)) || SimplexNum<T>::neg(at(i, j))) {
          pivot(i, j);
          ++pivots;
          break;
        }
      }
    }
  }

  bool is_art(std::size_t j) const { return j >= L_.art_begin && j < L_.cols; }

  StandardLayout L_;
  std::size_t m_ = 0;
  std::size_t w_ = 0;
  std::vector<T> tab_;
  std::vector<T> d_;
  std::vector<std::size_t> basis_;
  std::vector<bool> blocked_;
  std::vector<std::size_t> nz_;
  bool unbounded_ = false;
};

}  // namespace pebble::lp
