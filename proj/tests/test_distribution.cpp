#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "primerace/bessel.hpp"
#include "primerace/distribution.hpp"

using namespace primerace;
using cplx = std::complex<double>;

namespace {

const std::string kData = PRIMERACE_DATA_DIR;

ZeroSet shipped(const std::string& name) { return load_zero_file(kData + "/zeros/" + name); }

ZeroSet single_zero(double gamma, double weight) {
  ZeroSet zs;
  zs.add_component({"f", weight, 0, -1});
  zs.add_zero(gamma, 0);
  zs.normalize();
  return zs;
}

const std::vector<std::string> kShipped{"zeta_T100.csv", "chi_m4_T2000_mod4race.csv", "chi_m3_T1000_mod3race.csv",
                                        "synthetic_beta0_0.7.csv"};

// Empirical characteristic function E exp(-i xi X) of the LI model, drawn
// with an unrelated generator.
std::vector<cplx> empirical_cf(const ZeroSet& zs, double mean, double T, const std::vector<double>& xi, int n) {
  const TrigPolynomial tp(zs, mean, T);
  std::mt19937_64 gen(12345);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> acc(xi.size());
  for (int k = 0; k < n; ++k) {
    double x = mean;
    for (std::size_t j = 0; j < tp.size(); ++j)
      x -= tp.amplitudes()[j] * std::cos(2.0 * std::numbers::pi * u(gen) + tp.phases()[j]);
    for (std::size_t i = 0; i < xi.size(); ++i) acc[i] += std::polar(1.0, -xi[i] * x);
  }
  for (auto& v : acc) v /= n;
  return acc;
}

}  // namespace

TEST_CASE("no zeros: point mass") {
  for (double m : {-1.0, 0.0, 0.5}) {
    const auto s = sample_li(ZeroSet{}, m, 100.0, 1000, 7);
    CHECK(s.mean == m);
    CHECK(s.variance == 0.0);
    CHECK(s.delta == (m >= 0.0 ? 1.0 : 0.0));
    CHECK(s.histogram.total() == 1000);
    const auto t = sample_time_average(ZeroSet{}, m, 100.0, 50.0, 1000, 7);
    CHECK(t.mean == m);
    CHECK(t.variance == 0.0);
  }
  CHECK(delta_estimate(ZeroSet{}, 1.0, 10.0, DeltaMethod::montecarlo, {1000}).value == 1.0);
  CHECK(delta_estimate(ZeroSet{}, -1.0, 10.0, DeltaMethod::montecarlo, {1000}).value == 0.0);
  CHECK_THROWS_AS(delta_estimate(ZeroSet{}, -1.0, 10.0, DeltaMethod::fourier_inversion), InversionRefused);
  DeltaParams fb;
  fb.n_samples = 1000;
  fb.allow_fallback = true;
  const auto d = delta_estimate(ZeroSet{}, -1.0, 10.0, DeltaMethod::fourier_inversion, fb);
  CHECK(d.value == 0.0);
  CHECK(d.method == DeltaMethod::montecarlo);
}

TEST_CASE("LI sampler against closed-form moments") {
  const auto zeta = shipped("zeta_T100.csv");
  const auto s = sample_li(zeta, -1.0, 100.0, 1000000, 1);
  CHECK(std::abs(s.variance / variance(zeta, 100.0) - 1.0) < 0.02);
  CHECK(std::abs(s.skewness) < 0.01);
  CHECK(s.histogram.total() == s.n_samples);
  const auto c = sample_li(zeta, 0.0, 100.0, 1000000, 2);
  CHECK(std::abs(c.skewness) < 0.01);
  for (const auto& name : kShipped) {
    const auto zs = shipped(name);
    const double m = mean_mS(zs);
    const auto r = sample_li(zs, m, 1e9, 200000, 3);
    INFO(name);
    CHECK(std::abs(r.mean - m) < 3.0 * std::sqrt(r.variance / 200000.0));
    CHECK(r.histogram.total() == r.n_samples);
  }
}

TEST_CASE("seeded determinism independent of worker count") {
  const auto zs = shipped("chi_m3_T1000_mod3race.csv");
  const auto a = sample_li(zs, 2.0, 1000.0, 300000, 11, {1});
  const auto b = sample_li(zs, 2.0, 1000.0, 300000, 11, {4});
  const auto c = sample_li(zs, 2.0, 1000.0, 300000, 11, {1, 1u << 16});
  CHECK(a == b);
  CHECK(a == c);
  CHECK_FALSE(a == sample_li(zs, 2.0, 1000.0, 300000, 12));
  const auto t1 = sample_time_average(zs, 2.0, 200.0, 1e3, 100000, 5, {1});
  const auto t2 = sample_time_average(zs, 2.0, 200.0, 1e3, 100000, 5, {3});
  CHECK(t1 == t2);
}

TEST_CASE("time averages") {
  const auto one = single_zero(3.0, 1.0);
  const double ymax = 1e4;
  const auto s = sample_time_average(one, 0.7, 10.0, ymax, 200000, 1);
  const TrigPolynomial g(one, 0.7, 10.0);
  // |mean - m| <= amplitude * 2 / (gamma (ymax - 2)) plus sampling noise
  CHECK(std::abs(s.mean - 0.7) < 2.0 * g.amplitudes()[0] / (3.0 * (ymax - 2.0)) + 3.0 * std::sqrt(s.variance / 2e5));
  CHECK(std::abs(time_average_exact(g, 2.0, ymax) - 0.7) <= 2.0 * g.amplitudes()[0] / (3.0 * (ymax - 2.0)));

  const auto zeta = shipped("zeta_T100.csv");
  const auto t = sample_time_average(zeta, -1.0, 50.0, 1e4, 1000000, 9);
  CHECK(std::abs(t.variance / variance(zeta, 50.0) - 1.0) < 0.05);

  // closed-form average against Simpson
  const TrigPolynomial gz(zeta, -1.0, 100.0);
  const double a = 2.0, b = 40.0;
  const int n = 40000;
  double sum = gz.at_log(a) + gz.at_log(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * gz.at_log(a + (b - a) * i / n);
  CHECK(time_average_exact(gz, a, b) == doctest::Approx(sum / (3.0 * n)).epsilon(1e-10));
}

TEST_CASE("Fourier transform") {
  const auto zeta = shipped("zeta_T100.csv");
  std::vector<double> xi;
  for (int i = 0; i <= 400; ++i) xi.push_back(-20.0 + 0.1 * i);
  const auto fp = fourier_hat(zeta, -1.0, 100.0, xi);
  for (std::size_t i = 0; i < xi.size(); ++i) {
    CHECK(std::abs(fp.hat[i]) <= 1.0 + 1e-15);
    if (xi[i] == 0.0) CHECK(fp.hat[i] == cplx(1.0, 0.0));
  }
  CHECK(fourier_hat(zeta, -1.0, 100.0, {0.0}).hat[0] == cplx(1.0, 0.0));

  // single zero: exact form and Monte Carlo characteristic function
  const auto one = single_zero(4.0, 2.0);
  std::vector<double> grid;
  for (int i = 0; i <= 200; ++i) grid.push_back(0.1 * i);
  const auto f1 = fourier_hat(one, 0.5, 10.0, grid);
  const double r = 2.0 * 2.0 / std::abs(cplx(0.5, 4.0));
  const auto emp = empirical_cf(one, 0.5, 10.0, grid, 100000);
  double sup = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(f1.hat[i] - std::polar(1.0, -0.5 * grid[i]) * bessel_j0(r * grid[i])) < 1e-14);
    sup = std::max(sup, std::abs(f1.hat[i] - emp[i]));
  }
  CHECK(sup < 0.01);

  // several zeros: within three times the Monte Carlo error bound
  const int n = 20000;
  std::vector<double> g2(grid.begin(), grid.begin() + 81);
  const auto fz = fourier_hat(zeta, -1.0, 60.0, g2);
  const auto ez = empirical_cf(zeta, -1.0, 60.0, g2, n);
  for (std::size_t i = 0; i < g2.size(); ++i) CHECK(std::abs(fz.hat[i] - ez[i]) < 3.0 * std::sqrt(2.0 / n));
}

TEST_CASE("density by inversion") {
  const auto zeta = shipped("zeta_T100.csv");
  const double cut = fourier_cutoff(zeta, 100.0);
  std::vector<double> t;
  for (int i = -400; i <= 400; ++i) t.push_back(i * 0.0025);
  const auto fp = fourier_hat(zeta, 0.0, 100.0, fourier_grid(cut, 1.0));
  const auto d = density_by_inversion(fp, t);
  CHECK(std::abs(d.raw_mass - 1.0) < 0.01);
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) mass += 0.5 * (t[i + 1] - t[i]) * (d.phi[i] + d.phi[i + 1]);
  CHECK(std::abs(mass - 1.0) < 1e-3);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(std::abs(d.phi[i] - d.phi[t.size() - 1 - i]) < 1e-6);

  // truncated t window loses mass and is refused
  std::vector<double> narrow;
  for (int i = -50; i <= 50; ++i) narrow.push_back(i * 0.001);
  CHECK_THROWS_AS(density_by_inversion(fp, narrow), InversionRefused);
  // too few ordinates
  const auto f2 = fourier_hat(single_zero(4.0, 1.0), 0.0, 10.0, fourier_grid(50.0, 1.0));
  CHECK_THROWS_AS(density_by_inversion(f2, t), InversionRefused);
}

TEST_CASE("delta by inversion against the Gil-Pelaez formula") {
  const auto mod4 = shipped("chi_m4_T2000_mod4race.csv");
  const auto run = invert(mod4, 2.0, 2000.0);
  // delta = 1/2 - (1/pi) int_0^inf Im(hat(xi)) / xi dxi, Simpson on the same cutoff
  const double cut = run.profile.xi.back();
  const int n = 20000;
  const TrigPolynomial tp(mod4, 2.0, 2000.0);
  auto f = [&](double xi) {
    if (xi == 0.0) return -2.0;
    double prod = 1.0;
    for (double r : tp.amplitudes()) prod *= bessel_j0(r * xi);
    return prod * std::sin(-2.0 * xi) / xi;
  };
  double s = f(0.0) + f(cut);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(cut * i / n);
  const double gp = 0.5 - s * cut / (3.0 * n) / std::numbers::pi;
  CHECK(std::abs(run.delta.value - gp) < 1e-4);

  const auto mc = delta_estimate(mod4, 2.0, 2000.0, DeltaMethod::montecarlo, {1000000, 1});
  CHECK(std::abs(mc.value - run.delta.value) < 3.0 * (mc.stderr_ + run.delta.stderr_) + 1e-12);
}

TEST_CASE("Chebyshev bounds and sign consistency") {
  auto lo = chebyshev_bound(-2.0, 0.5);
  REQUIRE(lo);
  CHECK(lo->side == ChebyshevBound::Side::upper);
  CHECK(lo->bound == 0.125);
  auto hi = chebyshev_bound(2.0, 0.5);
  REQUIRE(hi);
  CHECK(hi->side == ChebyshevBound::Side::lower);
  CHECK(hi->bound == 0.875);
  CHECK(chebyshev_bound(-1.0, 3.0)->bound == 1.0);
  CHECK(chebyshev_bound(1.0, 3.0)->bound == 0.0);
  CHECK_FALSE(chebyshev_bound(0.0, 1.0));
  for (const auto& name : kShipped) {
    const auto zs = shipped(name);
    const double m = mean_mS(zs), v = variance(zs, 1e9);
    if (!(v < m * m / 2.0)) continue;
    const auto s = sample_li(zs, m, 1e9, 200000, 4);
    INFO(name);
    CHECK((s.delta > 0.5) == (m > 0.0));
  }
}

TEST_CASE("series comparison") {
  const std::vector<double> flat(100, -1.0);
  const auto c = compare_series(flat, flat);
  CHECK(c.rms == 0.0);
  CHECK_FALSE(c.correlation_defined);
  CHECK(std::isnan(c.correlation));
  std::vector<double> a, b;
  for (int i = 0; i < 100; ++i) {
    a.push_back(std::sin(0.1 * i));
    b.push_back(3.0 * std::sin(0.1 * i) + 1.0);
  }
  CHECK(compare_series(a, b).correlation == doctest::Approx(1.0));
  CHECK_THROWS(compare_series(a, flat.size() == 0 ? a : std::vector<double>(5)));

  RaceSpec spec;
  spec.terms.push_back({CoefficientSource::zeta(), 1.0});
  const auto traj = accumulate(spec, 1e5);
  const auto zeta = shipped("zeta_T100.csv");
  CHECK_THROWS_AS(compare_empirical(traj, zeta, -1.0, 100.0, std::log(1e3), std::log(1e6)), std::domain_error);
  ZeroSet off = zeta;
  off.beta0 = 0.6;
  CHECK_THROWS_AS(compare_empirical(traj, off, -1.0, 100.0, std::log(1e3), std::log(1e5)), std::domain_error);
  const auto ok = compare_empirical(traj, zeta, -1.0, 100.0, std::log(1e3), std::log(1e5), 2000);
  CHECK(ok.correlation_defined);
  CHECK(ok.points == 2000);
}
