#include <doctest.h>

#include <cmath>

#include "pebble/periodic.hpp"
#include "pebble/trace_io.hpp"

using namespace pebble;

namespace {

double d(Real v) { return static_cast<double>(v); }
const Rational kFine(mpz_class(1), mpz_class(1) << 80);

}  // namespace

TEST_CASE("unrolling the k = 5 scheme") {
  const auto ps = k5_scheme_float();
  const Real q = ps.q;
  const auto snaps = replay(unroll(ps, 1));
  REQUIRE(snaps.size() == 3);
  const std::vector<Real> s1{1, q * q, std::pow(q, 4), std::pow(q, 5), std::pow(q, 6)};
  const std::vector<Real> s2{q * q, std::pow(q, 4), std::pow(q, 5), std::pow(q, 6), std::pow(q, 7)};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(d(snaps[1].times()[i]) == doctest::Approx(d(s1[i])).epsilon(1e-15));
    CHECK(d(snaps[2].times()[i]) == doctest::Approx(d(s2[i])).epsilon(1e-15));
    CHECK(d(snaps[2].times()[i]) == doctest::Approx(d(q * q * ps.S0.times()[i])).epsilon(1e-15));
  }
  const auto one = unroll(ps, 1), two = unroll(ps, 2);
  for (std::size_t i = 0; i < one.actions.size(); ++i) {
    CHECK(one.actions[i].device == two.actions[i].device);
    CHECK(one.actions[i].time == two.actions[i].time);
  }
}

TEST_CASE("the k = 4 scheme returns to alpha S0") {
  const auto ps = k4_scheme_interval(kFine);
  const auto chk = verify_periodic(ps, Rational(1, 1000000000));
  CHECK(chk.periodic);
  for (std::size_t i = 0; i < 4; ++i) {
    const Interval diff = chk.Sm.times()[i] - ps.qm * ps.S0.times()[i];
    CHECK(ScalarTraits<Interval>::abs(diff).hi() < Rational(1, 1000000000));
  }
  // q^2 is the largest root of x^3 - x^2 - 2x + 1
  const Real q = k4_scheme_float().q;
  const Real a = q * q;
  CHECK(std::fabs(a * a * a - a * a - 2 * a + 1) < 1e-15L);
  CHECK(d(a) == doctest::Approx(1.8019377358).epsilon(1e-9));
}

TEST_CASE("periodicity checks") {
  const auto ps = k5_scheme_float();
  const auto ok = verify_periodic(ps, default_periodic_tol<Real>());
  CHECK(ok.periodic);
  CHECK(ok.deviation < 1e-15L);
  auto bad = ps;
  bad.P[1] += 1e-3L;
  CHECK_FALSE(verify_periodic(bad, default_periodic_tol<Real>()).periodic);

  // Round robin as a (q, 1)-periodic scheme with a q-geometric S0, exactly.
  const Rational q(3, 2);
  PeriodicScheme<Rational> rr;
  rr.k = 4;
  rr.q = rr.qm = q;
  rr.D = {1};
  std::vector<Rational> s0{q};
  for (int i = 1; i < 4; ++i) s0.push_back(s0.back() * q);
  rr.P = {s0.back() * q};
  rr.S0 = Snapshot<Rational>(s0);
  const auto chk = verify_periodic(rr, Rational(0));
  CHECK(chk.periodic);
  CHECK(chk.deviation == 0);
}

TEST_CASE("periodic efficiencies of the small-k schemes") {
  CHECK(d(periodic_efficiency(k5_scheme_float()).worst_ratio) == doctest::Approx(1.225612).epsilon(1e-6));
  CHECK(d(periodic_efficiency(k4_scheme_float()).worst_ratio) == doctest::Approx(1.231914).epsilon(1e-6));
  const auto rr2 = rr_scheme<Rational>(2);
  CHECK(rr2.q == 2);
  CHECK(periodic_efficiency(rr2).worst_ratio == 1);
  const auto c3 = with_refinement([](const Rational& tol) {
    return periodic_efficiency(rr_scheme<Interval>(3, tol), Rational(1, 1000000000)).worst_ratio;
  });
  CHECK(c3.width() < Rational(1, 1000000000));
  CHECK(d(ScalarTraits<Interval>::to_real(c3)) == doctest::Approx(1.145898).epsilon(1e-6));
  CHECK(d(rr_scheme<Real>(3).q) == doctest::Approx(1.618034).epsilon(1e-6));
  CHECK(periodic_efficiency(rr_scheme<Real>(5)).worst_ratio > 1.225612L);
  CHECK(d(k5_scheme_float().q) == doctest::Approx(1.324718).epsilon(1e-6));
}

TEST_CASE("periodic efficiency equals the unrolled measurement") {
  for (const auto& ps : {k4_scheme_float(), k5_scheme_float(), rr_scheme<Real>(6)}) {
    const Real c = periodic_efficiency(ps).worst_ratio;
    for (std::size_t p = 3; p <= 6; ++p) {
      CHECK(std::fabs(measured_efficiency(unroll(ps, p), false).worst_ratio - c) <= 1e-9L);
    }
  }
}

TEST_CASE("scaling leaves the efficiency unchanged") {
  const auto rr = rr_scheme<Rational>(2);
  CHECK(periodic_efficiency(scale_scheme(rr, Rational(7, 3))).worst_ratio == periodic_efficiency(rr).worst_ratio);
  const auto k5 = k5_scheme_float();
  CHECK(std::fabs(periodic_efficiency(scale_scheme(k5, 12.5L)).worst_ratio - periodic_efficiency(k5).worst_ratio) <
        1e-12L);
}

TEST_CASE("geometric 4-schemes cannot beat 4 * 0.31767") {
  // Every tuple of length <= 4 over {1,2,3}, driven by geometric update
  // times from a geometric seed, on a grid of q.
  Real best = 10;
  std::vector<std::vector<std::size_t>> tuples;
  for (std::size_t len = 1; len <= 4; ++len) {
    std::vector<std::size_t> D(len, 1);
    while (true) {
      tuples.push_back(D);
      std::size_t i = 0;
      while (i < len && D[i] == 3) D[i++] = 1;
      if (i == len) break;
      ++D[i];
    }
  }
  for (const auto& D : tuples) {
    for (Real q = 1.05L; q < 2.0L; q += 0.005L) {
      SchemeTrace<Real> tr{4, Snapshot<Real>({1, q, q * q, q * q * q}), {}};
      Real t = q * q * q;
      for (int rep = 0; rep < 12; ++rep) {
        for (auto dev : D) tr.actions.push_back({dev, t *= q});
      }
      best = std::min(best, measured_efficiency(tr, false).worst_ratio);
    }
  }
  CHECK(best >= 4 * 0.31767L - 1e-6L);
}

TEST_CASE("periodic scheme files") {
  const auto j = nlohmann::json::parse(R"({"k": 5,
    "q": {"poly": [1, 0, -1, -1], "bracket": ["13/10", "7/5"]}, "m": 2, "D": [3, 1],
    "P": [{"q_poly": [0,0,0,0,0,0,1]}, {"q_poly": [0,0,0,0,0,0,0,1]}],
    "S0": [{"q_poly": [1]}, {"q_poly": [0,0,1]}, {"q_poly": [0,0,0,1]}, {"q_poly": [0,0,0,0,1]}, {"q_poly": [0,0,0,0,0,1]}]})");
  REQUIRE(looks_like_periodic(j));
  const auto spec = periodic_spec_from_json(j);
  CHECK(spec.q_is_root());
  CHECK_THROWS_AS(instantiate_exact(spec), InvalidInput);
  CHECK(d(periodic_efficiency(instantiate_float(spec)).worst_ratio) == doctest::Approx(1.225612).epsilon(1e-6));

  const auto rr = rr_scheme<Rational>(2);
  const auto back = instantiate_exact(periodic_spec_from_json(periodic_to_json(rr)));
  CHECK(back.q == rr.q);
  CHECK(back.S0.times() == rr.S0.times());
  CHECK(back.P == rr.P);

  auto broken = j;
  broken["D"] = {3, 5};
  CHECK_THROWS_AS(periodic_spec_from_json(broken), InvalidInput);
}
