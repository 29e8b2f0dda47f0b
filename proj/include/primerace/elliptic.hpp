#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace primerace {

/// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct EllipticCurve {
  std::int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
  std::vector<std::uint64_t> conductor_primes;  // primes of bad reduction
  std::optional<int> analytic_rank_hint;        // metadata only
  std::string name;

  /// Builds the curve and derives the bad primes from the discriminant of
  /// the given model. Throws std::invalid_argument for a singular model.
  static EllipticCurve from_coefficients(std::int64_t a1, std::int64_t a2, std::int64_t a3,
                                         std::int64_t a4, std::int64_t a6,
                                         std::string name = {});

  /// "a1,a2,a3,a4,a6" or one of the preset names E1, E2, E0, E0prime.
  static EllipticCurve parse(const std::string& text);
  static EllipticCurve preset(const std::string& name);
  static std::vector<std::string> preset_names();

  __int128 discriminant() const;
  bool has_bad_reduction(std::uint64_t p) const;
  std::string coefficient_string() const;
};

class BadReduction : public std::domain_error {
 public:
  explicit BadReduction(std::uint64_t p)
      : std::domain_error("bad reduction at p=" + std::to_string(p)), prime(p) {}
  std::uint64_t prime;
};

/// Primes below this use the character sum; primes at or above use
/// Shanks-Mestre baby-step giant-step.
inline constexpr std::uint64_t kBsgsCutoff = 1u << 16;

/// Frobenius trace a_p = p + 1 - #E(F_p). Throws BadReduction at bad primes.
std::int64_t ec_ap(const EllipticCurve& curve, std::uint64_t p);

/// a_p as minus the sum of Legendre symbols of the completed-square cubic.
/// Valid for every good prime (p = 2 handled by direct count). O(p).
std::int64_t ec_ap_legendre(const EllipticCurve& curve, std::uint64_t p);

/// a_p by Mestre's baby-step giant-step on the curve and its quadratic twist.
/// Requires 229 < p < 2^32.
std::int64_t ec_ap_bsgs(const EllipticCurve& curve, std::uint64_t p);

}  // namespace primerace
