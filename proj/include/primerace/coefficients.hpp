#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "primerace/elliptic.hpp"

namespace primerace {

/// p = a^2 + D b^2 with a >= 0, b > 0 (and a < b when D = 1).
struct Representation {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  bool operator==(const Representation&) const = default;
};

/// Cornacchia's algorithm for D in {1, 2, 3, 4}. Empty when p is not
/// represented by a^2 + D b^2. Throws std::domain_error if p divides 2D.
std::optional<Representation> cornacchia(std::uint64_t p, int D);

/// (a^2 - D b^2)/p for p = a^2 + D b^2, doubled with with_factor2; 0 when p
/// is not represented. Throws std::domain_error if p divides 2D.
double lambda_sum2sq(std::uint64_t p, int D, bool with_factor2);

/// cos(4 theta_p) = (a^4 + b^4 - 6 a^2 b^2)/p^2 for p = a^2 + b^2; 0 for
/// p = 2 and p = 3 mod 4.
double lambda_gauss(std::uint64_t p);

/// +1 if p = a mod q, -1 if p = b mod q, else 0.
double dirichlet_pair_coeff(std::uint64_t q, std::uint64_t a, std::uint64_t b, std::uint64_t p);

/// Quadratic residue race weights mod q.
class QrRace {
 public:
  explicit QrRace(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }
  /// Index of the squares in (Z/qZ)^x.
  std::uint64_t rho() const { return rho_; }
  double operator()(std::uint64_t p) const;

 private:
  std::uint64_t q_;
  std::uint64_t rho_;
  std::vector<std::int8_t> residue_;  // 1 square unit, -1 non-square unit, 0 non-unit
};

/// (rho-1)/rho on quadratic residues mod q, -1/rho on non-residues, 0 if p | q.
double qr_race_coeff(std::uint64_t q, std::uint64_t p);

/// a_p(c1) a_p(c2) / p, 0 at primes bad for either curve.
double lambda_ec_pair(const EllipticCurve& c1, const EllipticCurve& c2, std::uint64_t p);

enum class Family { zeta, dirichlet_pair, qr_race, sum_two_squares, gauss_angle, ec_trace, ec_pair };

std::string to_string(Family f);

/// A deterministic map p -> lambda(p) together with the analytic metadata
/// of the L-function it comes from. Excluded primes (p | 2D, bad
/// reduction, p | q) evaluate to 0.
class CoefficientSource {
 public:
  static CoefficientSource zeta();
  static CoefficientSource dirichlet_pair(std::uint64_t q, std::uint64_t a, std::uint64_t b);
  static CoefficientSource qr_race(std::uint64_t q);
  static CoefficientSource sum_two_squares(int D, bool with_factor2 = false);
  static CoefficientSource gauss_angle();
  static CoefficientSource ec_trace(const EllipticCurve& curve);
  static CoefficientSource ec_pair(const EllipticCurve& c1, const EllipticCurve& c2);

  Family family() const { return family_; }
  int degree() const { return degree_; }
  /// m(L(f,.), 1); negative for a pole.
  int pole_order_s1() const { return pole_order_s1_; }
  /// m(L(f^(2),.), 1); negative for a pole.
  int second_moment_pole() const { return second_moment_pole_; }
  const std::string& label() const { return label_; }

  double operator()(std::uint64_t p) const;

 private:
  CoefficientSource() = default;

  Family family_ = Family::zeta;
  int degree_ = 1;
  int pole_order_s1_ = 0;
  int second_moment_pole_ = -1;
  std::string label_;

  std::uint64_t q_ = 0, a_ = 0, b_ = 0;
  int D_ = 0;
  bool factor2_ = false;
  std::optional<QrRace> qr_;
  std::vector<EllipticCurve> curves_;
};

}  // namespace primerace
