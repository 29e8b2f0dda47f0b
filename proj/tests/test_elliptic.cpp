#include <doctest.h>

#include <cmath>

#include "primerace/elliptic.hpp"
#include "primerace/modarith.hpp"
#include "primerace/primes.hpp"

using namespace primerace;

namespace {

std::int64_t md(std::int64_t v, std::int64_t p) { return ((v % p) + p) % p; }

// p + 1 - #E(F_p) by enumerating all (x, y).
std::int64_t naive_ap(const EllipticCurve& e, std::int64_t p) {
  std::int64_t count = 1;
  for (std::int64_t x = 0; x < p; ++x)
    for (std::int64_t y = 0; y < p; ++y) {
      const std::int64_t lhs = md(y * y + e.a1 * x * y + e.a3 * y, p);
      const std::int64_t rhs = md(x * x * x + e.a2 * x * x + e.a4 * x + e.a6, p);
      if (lhs == rhs) ++count;
    }
  return p + 1 - count;
}

}  // namespace

TEST_CASE("presets") {
  const auto e1 = EllipticCurve::preset("E1");
  CHECK(e1.discriminant() == 37);
  CHECK(e1.conductor_primes == std::vector<std::uint64_t>{37});
  CHECK(EllipticCurve::preset("E2").discriminant() == 389);
  CHECK(EllipticCurve::parse("0,0,1,-1,0").discriminant() == 37);
  CHECK_THROWS(EllipticCurve::parse("0,0,0,0,0"));
  CHECK_THROWS(EllipticCurve::parse("E9"));
  CHECK(EllipticCurve::preset_names().size() == 4);
}

TEST_CASE("traces of 37a1") {
  const auto e = EllipticCurve::preset("E1");
  const std::vector<std::pair<std::uint64_t, std::int64_t>> known{{2, -2}, {3, -3}, {5, -2}, {7, -1},
                                                                   {11, -5}, {13, -2}, {17, 0}, {19, 0}};
  for (auto [p, ap] : known) CHECK(ec_ap(e, p) == ap);
  CHECK_THROWS_AS(ec_ap(e, 37), BadReduction);
}

TEST_CASE("Legendre sums against point enumeration") {
  for (const auto& name : EllipticCurve::preset_names()) {
    const auto e = EllipticCurve::preset(name);
    for (std::uint64_t p : sieve_primes(400)) {
      if (e.has_bad_reduction(p)) continue;
      CHECK(ec_ap_legendre(e, p) == naive_ap(e, static_cast<std::int64_t>(p)));
    }
  }
  const auto odd = EllipticCurve::parse("1,-1,1,-3,5");
  for (std::uint64_t p : sieve_primes(300))
    if (!odd.has_bad_reduction(p)) CHECK(ec_ap_legendre(odd, p) == naive_ap(odd, static_cast<std::int64_t>(p)));
}

TEST_CASE("baby-step giant-step agrees with Legendre sums") {
  for (const auto& name : EllipticCurve::preset_names()) {
    const auto e = EllipticCurve::preset(name);
    for (std::uint64_t p : sieve_primes(6000)) {
      if (p <= 229 || e.has_bad_reduction(p)) continue;
      CHECK(ec_ap_bsgs(e, p) == ec_ap_legendre(e, p));
    }
    for (std::uint64_t p = kBsgsCutoff; p < kBsgsCutoff + 3000; ++p) {
      if (!is_prime(p) || e.has_bad_reduction(p)) continue;
      CHECK(ec_ap_bsgs(e, p) == ec_ap_legendre(e, p));
    }
  }
}

TEST_CASE("Hasse bound for large primes") {
  const auto e = EllipticCurve::preset("E2");
  int seen = 0;
  for (std::uint64_t p = 1000000007; seen < 200; p += 2) {
    if (!is_prime(p)) continue;
    ++seen;
    const auto ap = ec_ap(e, p);
    CHECK(static_cast<double>(ap * ap) <= 4.0 * static_cast<double>(p));
  }
}
