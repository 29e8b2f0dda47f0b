#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "primerace/parallel.hpp"
#include "primerace/primes.hpp"
#include "primerace/race.hpp"

using namespace primerace;

namespace {

RaceTrajectory steps(std::vector<Breakpoint> b, double xmax, double c = 0.0) {
  RaceTrajectory t;
  t.family = "manual";
  t.li_coefficient = c;
  t.xmax = xmax;
  t.breakpoints = std::move(b);
  return t;
}

RaceSpec single(const CoefficientSource& s, double w = 1.0) {
  RaceSpec spec;
  spec.terms.push_back({s, w});
  return spec;
}

}  // namespace

TEST_CASE("hand-evaluated partial sums") {
  const auto t = accumulate(single(CoefficientSource::sum_two_squares(4, false)), 20);
  CHECK(t.value(20) == doctest::Approx(-3.0 / 5 + 5.0 / 13 - 15.0 / 17).epsilon(1e-15));
  CHECK(t.breakpoints.size() == 4);  // 2, 5, 13, 17

  const auto d = accumulate(single(CoefficientSource::dirichlet_pair(4, 3, 1)), 10);
  CHECK(d.value(10) == 1.0);
  CHECK(d.value(4.9) == 1.0);
  CHECK(d.value(2.9) == 0.0);
  CHECK(d.value(7) == 1.0);
  CHECK(d.value(6.9) == 0.0);

  const auto e = accumulate(single(CoefficientSource::dirichlet_pair(4, 3, 1)), 2);
  REQUIRE(e.breakpoints.size() == 1);
  CHECK(e.breakpoints[0].cumulative == 0.0);
  CHECK(e.li_coefficient == 0.0);
  CHECK(accumulate(single(CoefficientSource::zeta()), 100).li_coefficient == -1.0);
}

TEST_CASE("normalization") {
  const auto z = accumulate(single(CoefficientSource::zeta()), 1e6);
  const double li_ref = std::expint(std::log(1e6)) - std::expint(std::log(2.0));
  const double expect = std::log(1e6) / 1e3 * (78498.0 - li_ref);
  CHECK(normalize(z, 1e6) == doctest::Approx(expect).epsilon(1e-12));
  CHECK_THROWS_AS(normalize(z, 1.5), std::domain_error);
  CHECK_THROWS_AS(normalize(z, 2e6), std::domain_error);

  // S(x) = x^beta0 / log x at a breakpoint gives E = 1
  const double x = 1000.0;
  auto t = steps({{2, 0.0}, {1000, std::sqrt(x) / std::log(x)}}, 2000.0);
  CHECK(normalize(t, x) == doctest::Approx(1.0).epsilon(1e-14));
  auto zero = steps({{2, 0.0}}, 1e4);
  CHECK(normalize(zero, 777.0) == 0.0);
}

TEST_CASE("log densities of constructed step functions") {
  const double y0 = std::log(2.0);
  auto pos = steps({{2, 1.0}, {5, 3.0}}, 100.0);
  CHECK(log_density_nonneg(pos, y0, std::log(100.0)) == 1.0);
  auto neg = steps({{2, -1.0}, {5, -3.0}}, 100.0);
  CHECK(log_density_nonneg(neg, y0, std::log(100.0)) == 0.0);
  auto half = steps({{2, 1.0}, {4, -1.0}}, 8.0);
  CHECK(log_density_nonneg(half, y0, std::log(8.0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(log_density_nonneg(half, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(log_density_nonneg(half, y0, std::log(9.0)), std::domain_error);
  // right-continuity at the breakpoint: S(4) = -1
  auto at = steps({{2, -1.0}, {4, 0.0}}, 8.0);
  CHECK(log_density_nonneg(at, y0, std::log(8.0)) == doctest::Approx(0.5));
}

TEST_CASE("complementary densities and the li term") {
  const auto z = accumulate(single(CoefficientSource::zeta()), 2e5);
  const double y0 = std::log(2.0), Y = std::log(2e5);
  for (bool normed : {false, true}) {
    const double a = log_density_nonneg(z, y0, Y, normed);
    const double b = log_density_strictneg(z, y0, Y, normed);
    CHECK(a + b == doctest::Approx(1.0).epsilon(1e-12));
  }
  // pi(x) >= 0 always; pi(x) - li(x) < 0 on this whole range apart from tiny x
  CHECK(log_density_nonneg(z, y0, Y, false) == 1.0);
  CHECK(log_density_nonneg(z, std::log(100.0), Y, true) == 0.0);
}

TEST_CASE("additivity, scale invariance and worker independence") {
  const auto s1 = CoefficientSource::sum_two_squares(2, false);
  const auto s2 = CoefficientSource::gauss_angle();
  RaceSpec both;
  both.terms = {{s1, 1.5}, {s2, -0.5}};
  const auto tb = accumulate(both, 1e5);
  const auto t1 = accumulate(single(s1), 1e5);
  const auto t2 = accumulate(single(s2), 1e5);
  for (const auto& b : tb.breakpoints) {
    const double x = static_cast<double>(b.p);
    CHECK(b.cumulative == doctest::Approx(1.5 * t1.value(x) - 0.5 * t2.value(x)).epsilon(1e-12).scale(1.0));
  }
  RaceSpec scaled = single(s1, 3.0);
  const auto ts = accumulate(scaled, 1e5);
  const double y0 = std::log(2.0), Y = std::log(1e5);
  CHECK(log_density_nonneg(ts, y0, Y) == log_density_nonneg(t1, y0, Y));
  const auto tw = accumulate(both, 1e5, {3, 1000});
  CHECK(tw == tb);
}

TEST_CASE("summation order for a 10^7-term race") {
  RaceSpec spec;
  spec.terms = {{CoefficientSource::qr_race(7), 1.0}, {CoefficientSource::sum_two_squares(2, false), 1.0}};
  const std::uint64_t p_10m = 179424673;  // the 10^7-th prime
  const auto primes = sieve_primes(p_10m + 1);
  REQUIRE(primes.size() == 10000000);
  const auto t = accumulate(spec, static_cast<double>(p_10m));
  CompensatedSum rev;
  std::size_t terms = 0;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    const double c = spec.contribution(*it);
    if (c != 0.0) ++terms;
    rev.add(c);
  }
  CHECK(terms >= 9999999);
  const double fwd = t.breakpoints.back().cumulative;
  CHECK(std::abs(fwd - rev.value()) <= 1e-9 * std::abs(fwd));
}

TEST_CASE("trajectory statistics") {
  auto flat = steps({{2, 1.0}, {3, 1.0}, {5, 1.0}}, 10.0);
  auto st = trajectory_stats(flat);
  CHECK(st.sign_changes == 0);
  CHECK(st.running_min == st.running_max);
  auto alt = steps({{2, 1.0}, {3, -1.0}, {5, 1.0}}, 10.0);
  CHECK(trajectory_stats(alt).sign_changes == 2);
  // log_mean of a constant S = 1 with beta0 = 1/2: average of y e^{-y/2}
  const double y0 = std::log(2.0), y1 = std::log(10.0);
  auto prim = [](double y) { return -std::exp(-0.5 * y) * (0.5 * y + 1.0) / 0.25; };
  CHECK(st.log_mean == doctest::Approx((prim(y1) - prim(y0)) / (y1 - y0)).epsilon(1e-13));
  const auto z = accumulate(single(CoefficientSource::zeta()), 1e6);
  const auto zs = trajectory_stats(z);
  INFO("zeta race running max of E: " << zs.normalized_max);
  CHECK(zs.running_min < 0.0);
}

TEST_CASE("export and import") {
  const auto dir = std::filesystem::temp_directory_path() / "primerace_test_race";
  std::filesystem::create_directories(dir);
  const auto d = accumulate(single(CoefficientSource::dirichlet_pair(4, 3, 1)), 1e5);
  export_trajectory(d, dir / "d.csv");
  CHECK(import_trajectory(dir / "d.csv") == d);
  const auto g = accumulate(single(CoefficientSource::gauss_angle()), 1e4);
  export_trajectory(g, dir / "g.csv");
  const auto back = import_trajectory(dir / "g.csv");
  REQUIRE(back.breakpoints.size() == g.breakpoints.size());
  for (std::size_t i = 0; i < g.breakpoints.size(); ++i) {
    CHECK(back.breakpoints[i].p == g.breakpoints[i].p);
    CHECK(std::abs(back.breakpoints[i].cumulative - g.breakpoints[i].cumulative) <=
          1e-11 * std::max(1.0, std::abs(g.breakpoints[i].cumulative)));
  }
  CHECK(format_trajectory(g) == format_trajectory(back));
  std::filesystem::remove_all(dir);
}
