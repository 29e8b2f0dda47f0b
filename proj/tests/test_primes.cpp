#include <doctest.h>

#include <vector>

#include "primerace/primes.hpp"

using namespace primerace;

namespace {

// Plain unsegmented sieve over all integers.
std::vector<std::uint64_t> reference_sieve(std::uint64_t limit) {
  std::vector<bool> comp(limit, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i < limit; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j < limit; j += i) comp[j] = true;
  }
  return out;
}

bool trial_division(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("pi(10^7) against the unsegmented sieve") {
  const auto ref = reference_sieve(10000000);
  CHECK(ref.size() == 664579);
  CHECK(count_primes(10000000) == ref.size());
  CHECK(sieve_primes(10000000) == ref);
}

TEST_CASE("small limits and trial division") {
  CHECK(sieve_primes(0).empty());
  CHECK(sieve_primes(2).empty());
  CHECK(sieve_primes(3) == std::vector<std::uint64_t>{2});
  CHECK(sieve_primes(12) == std::vector<std::uint64_t>{2, 3, 5, 7, 11});
  for (std::uint64_t lim = 0; lim < 300; ++lim) {
    std::vector<std::uint64_t> ref;
    for (std::uint64_t n = 0; n < lim; ++n)
      if (trial_division(n)) ref.push_back(n);
    CHECK(sieve_primes(lim) == ref);
  }
}

TEST_CASE("segment size does not change the output") {
  const auto ref = reference_sieve(200003);
  for (std::uint64_t seg : {1ull, 7ull, 64ull, 1000ull, 1ull << 18}) {
    std::vector<std::uint64_t> got;
    PrimeStream(200003, seg).for_each([&](std::uint64_t p) { got.push_back(p); });
    CHECK(got == ref);
  }
}

TEST_CASE("known counts") {
  CHECK(count_primes(1000001) == 78498);
  CHECK(count_primes(100) == 25);
  CHECK(count_primes(97) == 24);
  CHECK(count_primes(98) == 25);
}
