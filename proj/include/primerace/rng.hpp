#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace primerace {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stream key for (seed, stream index); distinct streams are decorrelated.
constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

/// Counter-based generator: output k is splitmix64(key + (k+1) * golden).
/// Any position of any stream can be computed directly, which is what makes
/// sharded sampling reproducible independently of the worker count.
class CounterRng {
 public:
  static constexpr const char* kName = "splitmix64-counter";
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0)
      : key_(key), counter_(counter) {}

  std::uint64_t at(std::uint64_t k) const { return splitmix64(key_ + (k + 1) * kGolden); }
  std::uint64_t next() { return at(counter_++); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

namespace detail {

struct TurnTable {
  static constexpr int kBits = 11;
  static constexpr int kSize = 1 << kBits;
  std::array<std::array<double, 2>, kSize> cs{};  // {cos, sin} of 2 pi k / kSize

  TurnTable() {
    for (int k = 0; k < kSize; ++k) {
      const double a = 2.0 * std::numbers::pi * k / kSize;
      cs[k] = {std::cos(a), std::sin(a)};
    }
  }
};

inline const TurnTable& turn_table() {
  static const TurnTable table;
  return table;
}

}  // namespace detail

/// cos(2 pi u / 2^32). Table lookup on the top bits plus a short Taylor
/// rotation for the remainder (|remainder| < 2 pi / 2048), accurate to a few
/// ulps.
inline double cos_turns(std::uint32_t u) {
  constexpr int shift = 32 - detail::TurnTable::kBits;
  constexpr double scale = 2.0 * std::numbers::pi / 4294967296.0;
  const auto& entry = detail::turn_table().cs[u >> shift];
  const double d = static_cast<double>(u & ((1u << shift) - 1)) * scale;
  const double d2 = d * d;
  const double cd = 1.0 - d2 * (0.5 - d2 * (1.0 / 24.0 - d2 * (1.0 / 720.0)));
  const double sd = d * (1.0 - d2 * (1.0 / 6.0 - d2 * (1.0 / 120.0)));
  return entry[0] * cd - entry[1] * sd;
}

}  // namespace primerace
