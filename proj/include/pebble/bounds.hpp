#pragma once

// Lower-bound apparatus: stability of a physical device, removal times
// R_i out of (0, 1], the truncated bounding expression BE_T(s), and the
// closed-form asymptotic lower bounds. The trace-side functions are
// templated on the scalar; the inequalities are evaluated in long double.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "pebble/core.hpp"

namespace pebble {

/// A positional trace together with its physical labels.
template <class T>
struct LabeledTrace {
  SchemeTrace<T> trace;
  LabelTrack labels;
};

template <class T>
LabeledTrace<T> label(SchemeTrace<T> trace) {
  validate(trace);
  LabelTrack lt = track_labels(trace);
  return {std::move(trace), std::move(lt)};
}

struct StabilityOrder {
  std::size_t s = 0;
  bool partial = false;  // the device is not updated again within the trace
};

/// Actions are numbered 1..N. Counts the distinct other devices updated
/// strictly between action n and the next update of the same device.
template <class T>
StabilityOrder stability_order(const LabeledTrace<T>& lt, std::size_t n) {
  const auto& lab = lt.labels.action_labels;
  if (n < 1 || n > lab.size()) throw InvalidInput("action index outside 1..N");
  const std::size_t me = lab[n - 1];
  std::vector<bool> seen(lt.trace.k, false);
  StabilityOrder out;
  out.partial = true;
  for (std::size_t j = n; j < lab.size(); ++j) {
    if (lab[j] == me) {
      out.partial = false;
      break;
    }
    if (!seen[lab[j]]) seen[lab[j]] = true, ++out.s;
  }
  return out;
}

/// The action that put the device at position k - s of snapshot S_N in
/// place (0 if it still holds its initial time). Once every device has been
/// updated, that device is s-stable.
template <class T>
std::size_t stable_action(const LabeledTrace<T>& lt, std::size_t N, std::size_t s) {
  const std::size_t k = lt.trace.k;
  if (N > lt.trace.actions.size()) throw InvalidInput("snapshot index beyond the trace");
  if (s < 1 || s + 1 > k) throw InvalidInput("s must lie in 1..k-1");
  const std::size_t target = lt.labels.positions[N][k - s - 1];
  for (std::size_t j = N; j >= 1; --j) {
    if (lt.labels.action_labels[j - 1] == target) return j;
  }
  return 0;
}

/// Whether every device has been updated at least once by action N.
template <class T>
bool all_updated(const LabeledTrace<T>& lt, std::size_t N) {
  std::vector<bool> seen(lt.trace.k, false);
  std::size_t count = 0;
  for (std::size_t j = 0; j < N && j < lt.labels.action_labels.size(); ++j) {
    const auto l = lt.labels.action_labels[j];
    if (!seen[l]) seen[l] = true, ++count;
  }
  return count == lt.trace.k;
}

/// Rescales so that action n happens at time 1. Labels are unaffected.
template <class T>
LabeledTrace<T> normalize_at(const LabeledTrace<T>& lt, std::size_t n) {
  if (n < 1 || n > lt.trace.actions.size()) throw InvalidInput("action index outside 1..N");
  const T one = ScalarTraits<T>::from_rational(Rational(1));
  const T factor = one / lt.trace.actions[n - 1].time;
  return {scale_trace(lt.trace, factor), lt.labels};
}

template <class T>
struct RemovalSequence {
  std::vector<T> R;      // R_0 = time of the anchor action, then R_1 < ... (up to s)
  std::size_t s = 0;     // requested order
  bool partial = false;  // fewer than s removals seen
  bool anchor_repeated = false;  // the anchor device came back first (order < s)
  T horizon{};           // time of the last action examined
  std::size_t found() const { return R.empty() ? 0 : R.size() - 1; }
};

/// Replays the trace after action n (the anchor, normally at time 1) and
/// records when the devices holding times in (0, R_0] are first updated
/// again, stopping after s of them.
template <class T>
RemovalSequence<T> removal_times(const LabeledTrace<T>& lt, std::size_t n, std::size_t s) {
  const auto& acts = lt.trace.actions;
  const auto& lab = lt.labels.action_labels;
  if (n < 1 || n > acts.size()) throw InvalidInput("action index outside 1..N");
  RemovalSequence<T> out;
  out.s = s;
  out.R.push_back(acts[n - 1].time);
  out.horizon = acts[n - 1].time;
  const std::size_t anchor = lab[n - 1];
  std::vector<bool> removed(lt.trace.k, false);
  for (std::size_t j = n; j < acts.size() && out.found() < s; ++j) {
    out.horizon = acts[j].time;
    if (lab[j] == anchor) {
      out.anchor_repeated = true;
      break;
    }
    if (removed[lab[j]]) continue;
    removed[lab[j]] = true;
    out.R.push_back(acts[j].time);
  }
  out.partial = out.found() < s;
  return out;
}

struct BoundingValue {
  Real value = 0;
  // Missing R_i count as the horizon T. That is exact only if the replay
  // reached T without the anchor device coming back.
  bool exact = true;
};

/// BE_T(s) = sum_{i=1..s} min(T, R_i).
template <class T>
BoundingValue bounding_expression(const RemovalSequence<T>& rs, std::size_t s, Real horizon = 2) {
  BoundingValue out;
  for (std::size_t i = 1; i <= s; ++i) {
    if (i < rs.R.size()) {
      out.value += std::min(horizon, ScalarTraits<T>::to_real(rs.R[i]));
    } else {
      out.value += horizon;
      if (rs.anchor_repeated || ScalarTraits<T>::to_real(rs.horizon) < horizon) out.exact = false;
    }
  }
  return out;
}

BoundingValue bounding_expression(const std::vector<Real>& R, Real horizon = 2);

// --- closed forms ------------------------------------------------------------

struct LowerBound {
  Real value = 0;
  std::size_t k = 0;
  bool derived_from_even = false;  // odd k, through c_k >= c_{k+1} k / (k+1)
};

/// 2 - ln 2 - 1/(k-2) for even k >= 4.
LowerBound lower_bound_weak(std::size_t k);
/// k (1 - 2^{-2/k}) for even k >= 2.
LowerBound lower_bound_strong(std::size_t k);
/// (1 - ln 2 / k) ln 4, the explicit form of the strong bound.
Real lower_bound_strong_explicit(std::size_t k);
/// (1 - c/k)^{-k/2}; at least 2 for every achievable c.
Real asymptote_value(Real c, std::size_t k);
inline bool strong_check(Real c, std::size_t k) { return asymptote_value(c, k) >= 2; }

// --- property verifiers --------------------------------------------------------

enum class CheckStatus { Holds, Violated, Inapplicable };
const char* to_string(CheckStatus s);

struct InequalityCheck {
  std::string name;
  CheckStatus status = CheckStatus::Holds;
  Real lhs = 0;
  Real rhs = 0;  // holds when lhs <= rhs (+ slack)
  std::string note;
};

/// Lemma: b BE_2(s) <= (1-b)^{-s} - 1, needing 1 <= s <= k/2 and
/// (1-b)^{-s} <= 2 (the induction only uses the condition up to level s).
InequalityCheck be_upper_check(Real be2, Real b, std::size_t s, std::size_t k);

struct PropertyOptions {
  Real slack = 1e-9L;          // relative slack for float traces
  bool include_initial = false;  // judge S0 when re-checking efficiency
  Real horizon = 2;
};

struct PropertyReport {
  bool efficient = false;   // re-checked through measured_efficiency
  Real measured_c = 0;
  std::size_t anchor = 0;   // normalisation action
  std::size_t stability = 0;
  std::vector<Real> R;      // normalised removal times, R_0 = 1
  Real be2 = 0;             // BE_2(k/2)
  bool be_exact = true;
  std::vector<InequalityCheck> checks;
  std::size_t violations() const;
  std::size_t applicable() const;
};

/// Checks the lower-bound propositions on a c-efficient trace normalised at
/// action n, which must be (k/2)-stable: b BE_2(k/2) >= 1, R_i <= 1/(1-bi),
/// the weak upper bound on b BE_2(k/2), and the lemma for s = 1..k/2.
PropertyReport verify_properties(const LabeledTrace<Real>& lt, Real c, std::size_t n, const PropertyOptions& opt = {});

/// verify_be_upper on its own: efficiency re-checked first; status
/// Inapplicable when the trace is not c-efficient or the preconditions fail.
InequalityCheck verify_be_upper(const LabeledTrace<Real>& lt, Real c, std::size_t n, std::size_t s,
                                const PropertyOptions& opt = {});

}  // namespace pebble
