#pragma once

// Independent reference implementations used only by the tests.

#include <random>
#include <vector>

#include "pebble/core.hpp"

namespace pebble::oracle {

/// Every interval of every snapshot S_0..S_N at its own time, plus the
/// limit of the growing newest interval just before each next update.
/// Written from the definition, without the standard-snapshot reduction.
inline Rational brute_force_efficiency(const SchemeTrace<Rational>& tr) {
  std::vector<Rational> times = tr.initial.times();
  Rational worst = 0;
  auto judge = [&](const std::vector<Rational>& s, const Rational& now) {
    Rational prev = 0;
    for (const auto& v : s) {
      const Rational r = (v - prev) / now;
      if (r > worst) worst = r;
      prev = v;
    }
  };
  judge(times, times.back());
  for (const auto& a : tr.actions) {
    // (T - T_k)/T increases towards the next update time.
    const Rational gap = (a.time - times.back()) / a.time;
    if (gap > worst) worst = gap;
    std::vector<Rational> next;
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (i + 1 != a.device) next.push_back(times[i]);
    }
    next.push_back(a.time);
    times = std::move(next);
    judge(times, a.time);
  }
  // No limit after the final update: a finite trace says nothing past it.
  return worst * static_cast<long>(tr.k);
}

/// Random trace with k <= kmax devices and at most nmax actions, small
/// integer-over-small-denominator times.
inline SchemeTrace<Rational> random_trace(std::mt19937_64& rng, std::size_t kmax, std::size_t nmax) {
  std::uniform_int_distribution<std::size_t> kd(2, kmax), nd(1, nmax);
  std::uniform_int_distribution<int> step(1, 9), den(1, 4);
  const std::size_t k = kd(rng);
  std::vector<Rational> init;
  Rational t = 0;
  for (std::size_t i = 0; i < k; ++i) {
    Rational s(step(rng), den(rng));
    s.canonicalize();
    t += s;
    init.push_back(t);
  }
  SchemeTrace<Rational> tr{k, Snapshot<Rational>(init), {}};
  const std::size_t n = nd(rng);
  std::uniform_int_distribution<std::size_t> dd(1, k);
  for (std::size_t i = 0; i < n; ++i) {
    Rational s(step(rng), den(rng));
    s.canonicalize();
    t += s;
    tr.actions.push_back({dd(rng), t});
  }
  return tr;
}

}  // namespace pebble::oracle
