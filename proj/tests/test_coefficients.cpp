#include <doctest.h>

#include <cmath>
#include <map>

#include "primerace/coefficients.hpp"
#include "primerace/primes.hpp"

using namespace primerace;

namespace {

// Canonical representation by exhaustive search over b.
std::optional<Representation> exhaustive(std::uint64_t p, int D) {
  std::optional<Representation> best;
  for (std::uint64_t b = 1; static_cast<std::uint64_t>(D) * b * b <= p; ++b) {
    const std::uint64_t rest = p - static_cast<std::uint64_t>(D) * b * b;
    const auto a = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(rest))));
    for (std::uint64_t c : {a == 0 ? 0 : a - 1, a, a + 1}) {
      if (c * c != rest) continue;
      Representation r{c, b};
      if (D == 1 && r.a > r.b) continue;
      best = r;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("Cornacchia against exhaustive search") {
  for (std::uint64_t p : sieve_primes(20000)) {
    for (int D = 1; D <= 4; ++D) {
      if ((2 * static_cast<std::uint64_t>(D)) % p == 0) {
        CHECK_THROWS_AS(cornacchia(p, D), std::domain_error);
        continue;
      }
      CHECK(cornacchia(p, D) == exhaustive(p, D));
    }
  }
}

TEST_CASE("lambda values") {
  CHECK(lambda_sum2sq(13, 4, true) == doctest::Approx(10.0 / 13));
  CHECK(lambda_sum2sq(5, 4, true) == doctest::Approx(-6.0 / 5));
  CHECK(lambda_sum2sq(5, 4, false) == doctest::Approx(-3.0 / 5));
  CHECK(lambda_sum2sq(7, 4, false) == 0.0);
  CHECK(lambda_sum2sq(11, 2, false) == doctest::Approx((9.0 - 2.0) / 11));  // 11 = 3^2 + 2
  CHECK(lambda_sum2sq(7, 3, false) == doctest::Approx((4.0 - 3.0) / 7));    // 7 = 2^2 + 3
  // 5 = 1 + 4: cos 4 theta with theta = atan(2)
  CHECK(lambda_gauss(5) == doctest::Approx(std::cos(4.0 * std::atan2(2.0, 1.0))));
  CHECK(lambda_gauss(13) == doctest::Approx(std::cos(4.0 * std::atan2(3.0, 2.0))));
  CHECK(lambda_gauss(2) == 0.0);
  CHECK(lambda_gauss(7) == 0.0);
  for (std::uint64_t p : sieve_primes(5000)) {
    if (p % 4 != 1) continue;
    CHECK(std::abs(lambda_gauss(p)) <= 1.0 + 1e-12);
    CHECK(std::abs(lambda_sum2sq(p, 4, false)) < 1.0);
  }
}

TEST_CASE("Dirichlet and quadratic residue races") {
  CHECK(dirichlet_pair_coeff(4, 3, 1, 7) == 1.0);
  CHECK(dirichlet_pair_coeff(4, 3, 1, 5) == -1.0);
  CHECK(dirichlet_pair_coeff(4, 3, 1, 2) == 0.0);
  CHECK_THROWS_AS(dirichlet_pair_coeff(4, 2, 1, 7), std::domain_error);
  CHECK_THROWS_AS(dirichlet_pair_coeff(4, 1, 5, 7), std::domain_error);

  QrRace r7(7);
  CHECK(r7.rho() == 2);
  CHECK(r7(2) == doctest::Approx(0.5));   // 2 = 3^2 mod 7
  CHECK(r7(3) == doctest::Approx(-0.5));
  CHECK(r7(7) == 0.0);
  QrRace r8(8);
  CHECK(r8.rho() == 4);
  CHECK(r8(17) == doctest::Approx(0.75));
  CHECK(r8(3) == doctest::Approx(-0.25));
  // weights sum to zero over a full set of units
  for (std::uint64_t q : {3u, 5u, 8u, 12u, 15u, 24u}) {
    QrRace r(q);
    double s = 0.0;
    for (std::uint64_t u = 1; u < q; ++u) s += r(u + q * 1000003);
    CHECK(std::abs(s) < 1e-12);
  }
}

TEST_CASE("sources and metadata") {
  const auto z = CoefficientSource::zeta();
  CHECK(z(101) == 1.0);
  CHECK(z.pole_order_s1() == -1);
  const auto s = CoefficientSource::sum_two_squares(2, false);
  CHECK(s(2) == 0.0);
  CHECK(s(11) == doctest::Approx(7.0 / 11));
  CHECK_THROWS(CoefficientSource::sum_two_squares(5));
  const auto g = CoefficientSource::gauss_angle();
  CHECK(g(5) == doctest::Approx(lambda_gauss(5)));
  const auto e = CoefficientSource::ec_pair(EllipticCurve::preset("E1"), EllipticCurve::preset("E2"));
  CHECK(e(37) == 0.0);  // bad for E1
  CHECK(e.degree() == 4);
}
