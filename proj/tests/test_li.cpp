#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "primerace/li.hpp"

using namespace primerace;

namespace {

// Ramanujan's series for the principal value li_0(x):
// gamma + log log x + sqrt(x) sum_n (-1)^{n-1} (log x)^n / (n! 2^{n-1}) sum_{k <= (n-1)/2} 1/(2k+1)
double ramanujan_li0(double x) {
  const double lx = std::log(x);
  double sum = 0.0, fact = 1.0, lpow = 1.0, inner = 0.0;
  for (int n = 1; n < 200; ++n) {
    fact *= n;
    lpow *= lx;
    if ((n - 1) % 2 == 0) inner += 1.0 / n;
    const double term = lpow / (fact * std::pow(2.0, n - 1)) * inner;
    sum += (n % 2 == 1 ? term : -term);
  }
  return std::numbers::egamma + std::log(lx) + std::sqrt(x) * sum;
}

}  // namespace

TEST_CASE("li against the exponential integral") {
  const double li2 = std::expint(std::log(2.0));
  for (double x : {2.0, 2.5, 10.0, 100.0, 1e4, 1e6, 2e7, 1e9}) {
    const double ref = std::expint(std::log(x)) - li2;
    CHECK(std::abs(li(x) - ref) <= 1e-9 + 1e-14 * ref);
  }
  CHECK(li(2.0) == 0.0);
}

TEST_CASE("li against Ramanujan's series") {
  const double offset = ramanujan_li0(2.0);
  for (double x : {3.0, 1e3, 1e5, 1e7}) CHECK(std::abs(li(x) - (ramanujan_li0(x) - offset)) < 1e-8);
}

TEST_CASE("domain and table consistency") {
  CHECK_THROWS_AS(li(1.5), std::domain_error);
  std::vector<double> nodes{2, 3, 5, 7, 11, 13, 1000, 1e5};
  LiTable table(nodes);
  for (double x : {2.0, 2.9, 3.0, 6.5, 12.0, 500.0, 99999.0, 1e5, 2e5})
    CHECK(std::abs(table(x) - li(x)) < 1e-9 * std::max(1.0, li(x)));
}

TEST_CASE("li_inverse") {
  for (double v : {0.0, 1.0, 123.4, 78626.5})
    CHECK(li(li_inverse(v)) == doctest::Approx(v).epsilon(1e-12));
}
