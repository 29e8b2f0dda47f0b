#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <numbers>

#include "primerace/bessel.hpp"

using namespace primerace;

namespace {

// (1/pi) int_0^pi cos(x sin t) dt; the trapezoid rule is spectrally accurate
// for this periodic integrand once the node count exceeds x.
double j0_integral(double x) {
  const int n = 64 + static_cast<int>(2.0 * std::abs(x));
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += std::cos(x * std::sin(std::numbers::pi * (k + 0.5) / n));
  return s / n;
}

}  // namespace

TEST_CASE("J0 against the integral representation and the standard library") {
  CHECK(bessel_j0(0.0) == 1.0);
  double worst = 0.0;
  for (double x = 0.0; x <= 200.0; x += 0.0173) {
    worst = std::max(worst, std::abs(bessel_j0(x) - j0_integral(x)));
    CHECK(std::abs(bessel_j0(x) - std::cyl_bessel_j(0.0, x)) < 1e-10);
  }
  CHECK(worst < 1e-10);
  for (double x : {1e3, 1e4, 12345.678}) CHECK(std::abs(bessel_j0(x) - j0_integral(x)) < 1e-10);
}

TEST_CASE("symmetry and first root") {
  for (double x : {0.3, 7.9, 8.1, 11.99, 12.01, 50.0}) CHECK(bessel_j0(-x) == bessel_j0(x));
  double lo = 2.0, hi = 3.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (bessel_j0(mid) > 0.0 ? lo : hi) = mid;
  }
  CHECK(std::abs(lo - 2.404826) < 1e-6);
  CHECK(std::abs(lo - 2.404825557695773) < 1e-11);
}
