#include "primerace/primes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace primerace {

PrimeStream::PrimeStream(std::uint64_t limit, std::uint64_t segment_size)
    : limit_(limit), segment_size_(segment_size) {
  if (segment_size_ == 0) throw std::invalid_argument("segment_size must be positive");
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit)));
  while (root * root > limit) --root;
  while ((root + 1) * (root + 1) <= limit) ++root;
  // Base primes by trial sieve on [0, root].
  std::vector<std::uint8_t> small(root + 1, 1);
  for (std::uint64_t i = 3; i * i <= root; i += 2)
    if (small[i])
      for (std::uint64_t j = i * i; j <= root; j += 2 * i) small[j] = 0;
  for (std::uint64_t i = 3; i <= root; i += 2)
    if (small[i]) base_primes_.push_back(static_cast<std::uint32_t>(i));
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit > 100) {
    const double x = static_cast<double>(limit);
    out.reserve(static_cast<std::size_t>(1.26 * x / std::log(x)) + 16);
  }
  PrimeStream(limit).for_each([&](std::uint64_t p) { out.push_back(p); });
  return out;
}

std::uint64_t count_primes(std::uint64_t limit) {
  std::uint64_t n = 0;
  PrimeStream(limit).for_each([&](std::uint64_t) { ++n; });
  return n;
}

}  // namespace primerace
