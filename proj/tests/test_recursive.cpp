#include <doctest.h>

#include <cmath>
#include <random>

#include "pebble/periodic.hpp"
#include "pebble/recursive.hpp"
#include "published_tables.hpp"

using namespace pebble;

namespace {

double d(Real v) { return static_cast<double>(v); }
using V = std::vector<std::size_t>;

}  // namespace

TEST_CASE("device sequences") {
  CHECK(device_sequence(RecursionKey({0, 3, 5, 9, 19})) == V{10, 6, 10, 4, 10, 6, 10, 1});
  CHECK(device_sequence(RecursionKey({0, 7})) == V{1});
  CHECK(device_sequence(RecursionKey({0, 2, 4})) == V{3, 1});
}

TEST_CASE("the inner scheme sits on the even positions") {
  for (std::int64_t k = 4; k <= 200; ++k) {
    const auto K = kstar(k);
    if (K.t() < 1) continue;
    const auto D = device_sequence(K);
    V even;
    for (std::size_t i = 1; i < D.size(); i += 2) even.push_back(D[i]);
    CHECK(even == device_sequence(K.inner()));
  }
}

TEST_CASE("exponents e(l)") {
  const RecursionKey K({0, 3, 5, 9, 19});
  CHECK(exponent_e(K, 0) == 10);
  CHECK(exponent_e(K, 1) == 18);
  CHECK(exponent_e(K, 2) == 26);
  CHECK(exponent_e(K, 3) == 50);
  const RecursionKey K2({0, 2, 4});
  CHECK(exponent_e(K2, 0) == 2);
  CHECK(exponent_e(K2, 1) == 6);
}

TEST_CASE("e(l) lower bounds for K*") {
  std::size_t bad = 0;
  for (std::int64_t k = 4; k <= 8192; ++k) {
    const auto K = kstar(k);
    const int t = K.t();
    for (int l = 0; l < t; ++l) {
      if (!(exponent_e(K, l) > (l + 1) * k / 2.0 - std::pow(2.0, l))) ++bad;
    }
    if (!(exponent_e(K, t) > (t + 2) * k / 2.0 - std::pow(2.0, t))) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("K* keys") {
  CHECK(kstar(4).elements() == std::vector<std::int64_t>{4, 2, 0});
  CHECK(kstar(8).elements() == std::vector<std::int64_t>{8, 4, 2, 0});
  CHECK(kstar(19).elements() == std::vector<std::int64_t>{19, 9, 4, 2, 0});
  CHECK(kstar(19).t() == 3);
}

TEST_CASE("rates") {
  const Real phi = (1 + std::sqrt(5.0L)) / 2;
  const auto r = rate(phi, RecursionKey({0, 2, 4}));
  CHECK(d(r.rate) == doctest::Approx((3 - std::sqrt(5.0)) / 2).epsilon(1e-12));
  CHECK(d(4 * r.rate) == doctest::Approx(1.527864045).epsilon(1e-9));
  // smallest root > 1 of x^4 - x - 1 by bisection
  Real lo = 1.1L, hi = 1.3L;
  for (int i = 0; i < 200; ++i) {
    const Real m = (lo + hi) / 2;
    (m * m * m * m - m - 1 < 0 ? lo : hi) = m;
  }
  CHECK(std::fabs(8 * rate(lo, kstar(8)).rate - 1.446619893L) < 1e-9L);
  // q -> 1+: the last condition tends to 1
  const auto near1 = rate(1.0000001L, kstar(16));
  CHECK(near1.rate > 0.99L);
  CHECK(near1.rate > rate(optimize_q(kstar(16)).q, kstar(16)).rate);
  CHECK_THROWS_AS(rate(1.0L, kstar(4)), InvalidInput);
}

TEST_CASE("optimal q") {
  const auto o4 = optimize_q(kstar(4));
  CHECK(d(o4.q) == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-12));
  CHECK(std::fabs(o4.efficiency - 1.527864045L) < 1e-9L);
  const auto o3 = optimize_q(kstar(3));
  CHECK(std::fabs(o3.efficiency - 1.145898034L) < 1e-9L);
  const auto o7 = optimize_q(kstar(7));
  // the printed 1.318433761 is ~1.2e-9 above the root value 1.3184337598
  CHECK(std::fabs(o7.efficiency - 1.318433761L) < 1e-8L);
  CHECK(o7.equation.text() == "x^8-x^7-1");
  Real lo = 1.1L, hi = 1.4L;
  for (int i = 0; i < 200; ++i) {
    const Real m = (lo + hi) / 2;
    (std::pow(m, 8.0L) - std::pow(m, 7.0L) - 1 < 0 ? lo : hi) = m;
  }
  CHECK(std::fabs(o7.q - lo) < 1e-12L);
  CHECK(std::fabs(o7.efficiency - 7 * (1 - 1 / lo)) < 1e-12L);
}

TEST_CASE("B(q, K) as a periodic scheme") {
  const Real phi = (1 + std::sqrt(5.0L)) / 2;
  const RecursionKey K({0, 2, 4});
  CHECK(std::fabs(periodic_efficiency(to_periodic(phi, K)).worst_ratio - 4 * rate(phi, K).rate) < 1e-9L);
  const auto o8 = optimize_q(kstar(8));
  CHECK(std::fabs(periodic_efficiency(to_periodic(o8.q, kstar(8))).worst_ratio - 1.446619893L) < 1e-9L);
  // t = 0 is round robin
  const auto b = to_periodic<Real>(1.3L, RecursionKey({0, 6}));
  const auto rr = rr_scheme_from_q<Real>(6, 1.3L);
  CHECK(b.D == rr.D);
  CHECK(std::fabs(periodic_efficiency(b).worst_ratio - periodic_efficiency(rr).worst_ratio) < 1e-12L);
}

TEST_CASE("efficiency formula agrees with simulation on random keys") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::int64_t> kd(3, 32);
  std::uniform_real_distribution<double> qd(1.02, 1.7);
  int checked = 0;
  while (checked < 20) {
    const std::int64_t k = kd(rng);
    // random strictly decreasing key below k
    std::vector<std::int64_t> el{k};
    std::uniform_int_distribution<int> coin(0, 2);
    for (std::int64_t v = k - 2; v >= 1; --v) {
      if (coin(rng) == 0) el.push_back(v);
    }
    if (el.size() > 6) el.resize(6);
    const RecursionKey K(el);
    const Real q = qd(rng);
    PeriodicScheme<Real> ps;
    try {
      ps = to_periodic(q, K);
    } catch (const std::runtime_error&) {
      continue;  // periodicity not reached for this pair
    }
    const Real sim = periodic_efficiency(ps).worst_ratio;
    CHECK(std::fabs(sim - static_cast<Real>(k) * rate(q, K).rate) <= 1e-9L);
    ++checked;
  }
}

TEST_CASE("published table rows") {
  const auto t2 = recursive_table_serial(2, 0, 17);
  REQUIRE(t2.size() == kTable2.size());
  for (std::size_t i = 0; i < t2.size(); ++i) {
    CAPTURE(t2[i].k);
    CHECK(t2[i].k == kTable2[i].k);
    CHECK(std::fabs(t2[i].efficiency - kTable2[i].efficiency) <= 1e-8L);
    CHECK(std::fabs(t2[i].q_half_power - kTable2[i].half_power) <= 1e-8L);
  }
  const auto t3 = recursive_table_serial(3, 0, 16);
  REQUIRE(t3.size() == kTable3.size());
  for (std::size_t i = 0; i < t3.size(); ++i) {
    CAPTURE(t3[i].k);
    CHECK(t3[i].k == kTable3[i].k);
    CHECK(std::fabs(t3[i].efficiency - kTable3[i].efficiency) <= 1e-8L);
    CHECK(std::fabs(t3[i].q_half_power - kTable3[i].half_power) <= 1e-8L);
  }
  CHECK(t2[12].eps_text == "5.738%");
}

TEST_CASE("parallel tables match the serial reference") {
  const auto a = recursive_table_serial(2, 0, 17), b = recursive_table_parallel(2, 0, 17);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].k == b[i].k);
    CHECK(a[i].efficiency == b[i].efficiency);
    CHECK(a[i].equation == b[i].equation);
  }
}

TEST_CASE("asymptotic certificates") {
  const auto c = asymptotic_certificate(8192);
  CHECK(std::fabs(c.efficiency - 1.389529892L) < 1e-8L);
  CHECK(c.theorem_applies);
  CHECK(c.theorem_conditions_hold);
  CHECK(c.remark_bound_holds);
  CHECK(std::fabs(asymptotic_certificate(131072).efficiency - 1.388789052L) < 1e-8L);
  CHECK(std::fabs(asymptotic_certificate(255).efficiency - 1.464278319L) < 1e-8L);
}

TEST_CASE("f(x, z) stays positive on the sampled grid") {
  std::size_t bad = 0;
  for (Real x = 13; x <= 20; x += 0.25L) {
    for (Real z = 1; z <= x - 1; z += 0.25L) {
      if (!(gamma_case2_f(x, z) > 0)) ++bad;
    }
  }
  CHECK(bad == 0);
}
