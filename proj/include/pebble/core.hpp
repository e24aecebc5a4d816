#pragma once

// The pebbling-game model of a k-device backup schedule.
//
// A snapshot holds the k last-update times sorted ascending, with the
// implicit origin T_0 = 0. Device indices are positional: device d is the
// one currently holding the d-th oldest data. Updating device d at time t
// drops T_d, merges the intervals on either side of it, and appends t.
//
// Everything here is templated on the scalar type (Rational, Real or
// Interval); all functions are pure.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pebble/scalar.hpp"

namespace pebble {

template <class T>
class Snapshot {
 public:
  Snapshot() = default;
  explicit Snapshot(std::vector<T> times) : times_(std::move(times)) {
    if (times_.size() < 2) throw InvalidInput("snapshot needs at least 2 devices");
    const T zero = ScalarTraits<T>::from_rational(Rational(0));
    if (!(zero < times_.front())) throw InvalidInput("snapshot times must be positive");
    for (std::size_t i = 1; i < times_.size(); ++i) {
      if (!(times_[i - 1] < times_[i])) {
        throw InvalidInput("snapshot times must be strictly increasing (position " +
                           std::to_string(i + 1) + ")");
      }
    }
  }

  std::size_t k() const { return times_.size(); }
  const std::vector<T>& times() const { return times_; }
  /// 1-based access, T(0) is the origin.
  T at(std::size_t i) const {
    return i == 0 ? ScalarTraits<T>::from_rational(Rational(0)) : times_[i - 1];
  }
  const T& newest() const { return times_.back(); }

  /// Multiplies every time by a positive factor.
  Snapshot scaled(const T& factor) const {
    std::vector<T> out;
    out.reserve(times_.size());
    for (const auto& v : times_) out.push_back(v * factor);
    return Snapshot(std::move(out));
  }

 private:
  std::vector<T> times_;
};

template <class T>
struct UpdateAction {
  std::size_t device = 1;  // 1..k, positional
  T time{};
};

template <class T>
struct SchemeTrace {
  std::size_t k = 0;
  Snapshot<T> initial;
  std::vector<UpdateAction<T>> actions;
};

/// Applies one update action.
template <class T>
Snapshot<T> apply_update(const Snapshot<T>& s, std::size_t d, const T& t) {
  const std::size_t k = s.k();
  if (d < 1 || d > k) {
    throw InvalidInput("device index " + std::to_string(d) + " outside 1.." + std::to_string(k));
  }
  if (!(s.newest() < t)) throw InvalidInput("update time must exceed the newest backup time");
  std::vector<T> next;
  next.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (i + 1 != d) next.push_back(s.times()[i]);
  }
  next.push_back(t);
  return Snapshot<T>(std::move(next));
}

/// Interval lengths T_i - T_{i-1}, i = 1..k, with T_0 = 0.
template <class T>
std::vector<T> intervals(const Snapshot<T>& s) {
  std::vector<T> out;
  out.reserve(s.k());
  for (std::size_t i = 1; i <= s.k(); ++i) out.push_back(s.at(i) - s.at(i - 1));
  return out;
}

/// Replays a trace, returning S_0, S_1, ..., S_N.
template <class T>
std::vector<Snapshot<T>> replay(const SchemeTrace<T>& trace) {
  std::vector<Snapshot<T>> out;
  out.reserve(trace.actions.size() + 1);
  out.push_back(trace.initial);
  for (const auto& a : trace.actions) out.push_back(apply_update(out.back(), a.device, a.time));
  return out;
}

/// Checks the trace invariants (k matches, actions increasing, devices in range).
template <class T>
void validate(const SchemeTrace<T>& trace) {
  if (trace.initial.k() != trace.k) throw InvalidInput("initial snapshot length differs from k");
  (void)replay(trace);
}

enum class TermKind {
  InitialInterval,  // interval j of S_0, over T_k^0
  MergedInterval,   // interval d_n of S_n right after action n, over t_n
  Gap,              // 1 - t_n / t_{n+1}; action 0 stands for T_k^0
};

template <class T>
struct ComplianceTerm {
  TermKind kind = TermKind::MergedInterval;
  std::size_t action = 0;    // snapshot index n (0 for the initial snapshot)
  std::size_t interval = 0;  // 1-based interval index; k+1 for gaps
  T ratio{};                 // length / current time
};

/// Worst observed efficiency of a finite trace.
///
/// The trace is only judged up to its last action: the gap after the final
/// update has no successor and is omitted (final_gap_omitted is always set).
template <class T>
struct ComplianceReport {
  T worst_ratio{};  // measured c = k * max term
  ComplianceTerm<T> witness;
  std::optional<std::pair<std::size_t, std::size_t>> gap_witness;  // (n, n+1)
  T worst_gap_ratio{};
  bool include_initial = true;
  bool final_gap_omitted = true;
  std::vector<ComplianceTerm<T>> terms;
};

/// Measured efficiency via the standard-snapshot reduction: only the
/// initial snapshot, the merged interval of every standard snapshot, and
/// the interval-(k+1) gaps between consecutive updates need checking.
template <class T>
ComplianceReport<T> measured_efficiency(const SchemeTrace<T>& trace, bool include_initial = true) {
  using Tr = ScalarTraits<T>;
  if (trace.actions.empty()) throw InvalidInput("trace has no update actions");
  const std::size_t k = trace.k;
  ComplianceReport<T> rep;
  rep.include_initial = include_initial;

  auto add = [&rep](ComplianceTerm<T> term) { rep.terms.push_back(std::move(term)); };

  Snapshot<T> snap = trace.initial;
  if (include_initial) {
    const T tk = snap.newest();
    const auto len = intervals(snap);
    for (std::size_t j = 0; j < k; ++j) add({TermKind::InitialInterval, 0, j + 1, len[j] / tk});
    const T one = Tr::from_rational(Rational(1));
    add({TermKind::Gap, 0, k + 1, one - tk / trace.actions.front().time});
  }
  for (std::size_t n = 0; n < trace.actions.size(); ++n) {
    const auto& a = trace.actions[n];
    snap = apply_update(snap, a.device, a.time);
    const T merged = snap.at(a.device) - snap.at(a.device - 1);
    add({TermKind::MergedInterval, n + 1, a.device, merged / a.time});
    if (n + 1 < trace.actions.size()) {
      const T one = Tr::from_rational(Rational(1));
      add({TermKind::Gap, n + 1, k + 1, one - a.time / trace.actions[n + 1].time});
    }
  }

  const T kk = Tr::from_rational(Rational(static_cast<long>(k)));
  std::optional<std::size_t> best, best_gap;
  T max_ratio{};
  T max_gap{};
  for (std::size_t i = 0; i < rep.terms.size(); ++i) {
    const auto& term = rep.terms[i];
    if (!best) {
      max_ratio = term.ratio;
      best = i;
    } else {
      if (Tr::ranks_above(term.ratio, rep.terms[*best].ratio)) best = i;
      max_ratio = Tr::max(max_ratio, term.ratio);
    }
    if (term.kind == TermKind::Gap) {
      if (!best_gap) {
        max_gap = term.ratio;
        best_gap = i;
      } else {
        if (Tr::ranks_above(term.ratio, rep.terms[*best_gap].ratio)) best_gap = i;
        max_gap = Tr::max(max_gap, term.ratio);
      }
    }
  }
  rep.worst_ratio = kk * max_ratio;
  rep.witness = rep.terms[*best];
  if (best_gap) {
    const std::size_t n = rep.terms[*best_gap].action;
    rep.gap_witness = std::make_pair(n, n + 1);
    rep.worst_gap_ratio = kk * max_gap;
  }
  return rep;
}

/// Longest interval of s: the largest extra cost an adversary can inflict
/// by infecting just before the end of that interval.
template <class T>
T worst_case_extra_cost(const Snapshot<T>& s, const T& attack_time) {
  if (attack_time < s.newest()) throw InvalidInput("attack time precedes the newest backup");
  const auto len = intervals(s);
  T best = len.front();
  for (const auto& l : len) best = ScalarTraits<T>::max(best, l);
  return best;
}

/// Extra cost for an infection at the given time: distance back to the
/// newest backup strictly older than the infection (or to time 0).
template <class T>
T extra_cost(const Snapshot<T>& s, const T& infection) {
  const T zero = ScalarTraits<T>::from_rational(Rational(0));
  if (!(zero < infection)) throw InvalidInput("infection time must be positive");
  T fresh = zero;
  for (const auto& v : s.times()) {
    if (v < infection) fresh = v;
  }
  return infection - fresh;
}

/// Physical device labels for a positional trace. Labels 0..k-1 start at
/// positions 1..k of the initial snapshot; an update moves the label at
/// position d to the newest position.
struct LabelTrack {
  std::vector<std::size_t> action_labels;           // label updated by action n (0-based n)
  std::vector<std::vector<std::size_t>> positions;  // label at each position after action n
};

template <class T>
LabelTrack track_labels(const SchemeTrace<T>& trace) {
  LabelTrack out;
  std::vector<std::size_t> pos(trace.k);
  for (std::size_t i = 0; i < trace.k; ++i) pos[i] = i;
  out.positions.push_back(pos);
  for (const auto& a : trace.actions) {
    if (a.device < 1 || a.device > trace.k) throw InvalidInput("device index out of range");
    const std::size_t label = pos[a.device - 1];
    pos.erase(pos.begin() + static_cast<std::ptrdiff_t>(a.device - 1));
    pos.push_back(label);
    out.action_labels.push_back(label);
    out.positions.push_back(pos);
  }
  return out;
}

template <class T>
SchemeTrace<T> scale_trace(const SchemeTrace<T>& trace, const T& factor) {
  SchemeTrace<T> out{trace.k, trace.initial.scaled(factor), {}};
  out.actions.reserve(trace.actions.size());
  for (const auto& a : trace.actions) out.actions.push_back({a.device, a.time * factor});
  return out;
}

}  // namespace pebble
