#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace primerace {

/// Segmented, odd-only sieve of Eratosthenes over [0, limit).
///
/// Working memory is one segment plus the base primes below sqrt(limit);
/// primes are handed to the caller in increasing order as each segment
/// is finished.
class PrimeStream {
 public:
  static constexpr std::uint64_t kDefaultSegment = 1u << 18;

  explicit PrimeStream(std::uint64_t limit,
                       std::uint64_t segment_size = kDefaultSegment);

  std::uint64_t limit() const { return limit_; }
  std::uint64_t segment_size() const { return segment_size_; }

  template <class F>
  void for_each(F&& visit) const {
    if (limit_ > 2) visit(std::uint64_t{2});
    run([&](std::uint64_t p) { visit(p); });
  }

 private:
  // Invokes visit for every odd prime below limit.
  template <class F>
  void run(F&& visit) const;

  std::uint64_t limit_;
  std::uint64_t segment_size_;
  std::vector<std::uint32_t> base_primes_;  // odd primes <= sqrt(limit)
};

/// All primes p < limit, increasing.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);

/// Number of primes < limit without materializing them.
std::uint64_t count_primes(std::uint64_t limit);

template <class F>
void PrimeStream::run(F&& visit) const {
  if (limit_ <= 3) return;
  // Segment slot i of segment starting at odd `low` represents low + 2i.
  std::vector<std::uint8_t> segment(segment_size_);
  std::vector<std::uint64_t> next(base_primes_.size());
  for (std::size_t k = 0; k < base_primes_.size(); ++k) {
    std::uint64_t p = base_primes_[k];
    next[k] = p * p;
  }
  const std::uint64_t span = 2 * segment_size_;
  for (std::uint64_t low = 3; low < limit_; low += span) {
    const std::uint64_t high = std::min(low + span, limit_);  // exclusive
    const std::uint64_t slots = (high - low + 1) / 2;
    std::fill(segment.begin(), segment.begin() + slots, std::uint8_t{1});
    for (std::size_t k = 0; k < base_primes_.size(); ++k) {
      const std::uint64_t p = base_primes_[k];
      std::uint64_t m = next[k];
      if (m >= high) continue;
      for (; m < high; m += 2 * p) segment[(m - low) / 2] = 0;
      next[k] = m;
    }
    for (std::uint64_t i = 0; i < slots; ++i)
      if (segment[i]) visit(low + 2 * i);
  }
}

}  // namespace primerace
