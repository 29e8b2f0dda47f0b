#include "primerace/coefficients.hpp"

#include <cmath>
#include <stdexcept>

#include "primerace/modarith.hpp"

namespace primerace {

std::optional<Representation> cornacchia(std::uint64_t p, int D) {
  if (D < 1 || D > 4) throw std::domain_error("cornacchia: D must be in {1,2,3,4}");
  const auto d = static_cast<std::uint64_t>(D);
  if (p < 2 || (2 * d) % p == 0) throw std::domain_error("cornacchia: p divides 2D");
  // Needs a square root of -D mod p.
  auto root = sqrt_mod(p - d % p, p);
  if (!root) return std::nullopt;
  std::uint64_t r0 = *root;
  if (2 * r0 < p) r0 = p - r0;
  std::uint64_t x = p, y = r0;
  const std::uint64_t bound = isqrt(p);
  while (y > bound) {
    const std::uint64_t t = x % y;
    x = y;
    y = t;
  }
  const std::uint64_t rest = p - y * y;
  if (rest % d != 0) return std::nullopt;
  const std::uint64_t b = isqrt(rest / d);
  if (b * b != rest / d || b == 0) return std::nullopt;
  Representation rep{y, b};
  if (D == 1 && rep.a > rep.b) std::swap(rep.a, rep.b);
  return rep;
}

double lambda_sum2sq(std::uint64_t p, int D, bool with_factor2) {
  auto rep = cornacchia(p, D);
  if (!rep) return 0.0;
  const double a2 = static_cast<double>(rep->a * rep->a);
  const double db2 = static_cast<double>(static_cast<std::uint64_t>(D) * rep->b * rep->b);
  const double v = (a2 - db2) / static_cast<double>(p);
  return with_factor2 ? 2.0 * v : v;
}

double lambda_gauss(std::uint64_t p) {
  if (p == 2 || p % 4 == 3) return 0.0;
  auto rep = cornacchia(p, 1);
  if (!rep) return 0.0;
  const double a2 = static_cast<double>(rep->a * rep->a);
  const double b2 = static_cast<double>(rep->b * rep->b);
  const double pp = static_cast<double>(p);
  return (a2 * a2 + b2 * b2 - 6.0 * a2 * b2) / (pp * pp);
}

double dirichlet_pair_coeff(std::uint64_t q, std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  if (q < 2) throw std::domain_error("dirichlet_pair: q must be >= 2");
  a %= q;
  b %= q;
  if (gcd(a, q) != 1 || gcd(b, q) != 1 || a == b)
    throw std::domain_error("dirichlet_pair: residues must be distinct units mod q");
  const std::uint64_t r = p % q;
  if (r == a) return 1.0;
  if (r == b) return -1.0;
  return 0.0;
}

QrRace::QrRace(std::uint64_t q) : q_(q), residue_(q, 0) {
  if (q < 3) throw std::domain_error("qr_race: q must be >= 3");
  std::uint64_t units = 0, squares = 0;
  for (std::uint64_t x = 1; x < q; ++x) {
    if (gcd(x, q) != 1) continue;
    ++units;
    residue_[x] = -1;
  }
  for (std::uint64_t x = 1; x < q; ++x)
    if (gcd(x, q) == 1) residue_[x * x % q] = 1;
  for (std::uint64_t x = 1; x < q; ++x) squares += residue_[x] == 1;
  rho_ = units / squares;
}

double QrRace::operator()(std::uint64_t p) const {
  const int kind = residue_[p % q_];
  const double rho = static_cast<double>(rho_);
  if (kind == 1) return (rho - 1.0) / rho;
  if (kind == -1) return -1.0 / rho;
  return 0.0;
}

double qr_race_coeff(std::uint64_t q, std::uint64_t p) { return QrRace(q)(p); }

double lambda_ec_pair(const EllipticCurve& c1, const EllipticCurve& c2, std::uint64_t p) {
  if (c1.has_bad_reduction(p) || c2.has_bad_reduction(p)) return 0.0;
  const double ap1 = static_cast<double>(ec_ap(c1, p));
  if (ap1 == 0.0) return 0.0;
  return ap1 * static_cast<double>(ec_ap(c2, p)) / static_cast<double>(p);
}

std::string to_string(Family f) {
  switch (f) {
    case Family::zeta: return "zeta";
    case Family::dirichlet_pair: return "dirichlet";
    case Family::qr_race: return "qr";
    case Family::sum_two_squares: return "sum2sq";
    case Family::gauss_angle: return "gauss";
    case Family::ec_trace: return "ec";
    case Family::ec_pair: return "ecpair";
  }
  return "?";
}

CoefficientSource CoefficientSource::zeta() {
  CoefficientSource s;
  s.family_ = Family::zeta;
  s.degree_ = 1;
  s.pole_order_s1_ = -1;
  s.second_moment_pole_ = -1;
  s.label_ = "zeta";
  return s;
}

CoefficientSource CoefficientSource::dirichlet_pair(std::uint64_t q, std::uint64_t a,
                                                    std::uint64_t b) {
  dirichlet_pair_coeff(q, a, b, 0);  // validates
  CoefficientSource s;
  s.family_ = Family::dirichlet_pair;
  s.q_ = q;
  s.a_ = a % q;
  s.b_ = b % q;
  s.pole_order_s1_ = 0;
  s.second_moment_pole_ = -1;
  s.label_ = "dirichlet(q=" + std::to_string(q) + ",a=" + std::to_string(s.a_) +
             ",b=" + std::to_string(s.b_) + ")";
  return s;
}

CoefficientSource CoefficientSource::qr_race(std::uint64_t q) {
  CoefficientSource s;
  s.family_ = Family::qr_race;
  s.q_ = q;
  s.qr_.emplace(q);
  s.pole_order_s1_ = 0;
  s.second_moment_pole_ = -1;
  s.label_ = "qr(q=" + std::to_string(q) + ")";
  return s;
}

CoefficientSource CoefficientSource::sum_two_squares(int D, bool with_factor2) {
  if (D < 2 || D > 4) throw std::domain_error("sum2sq: D must be 2, 3 or 4");
  CoefficientSource s;
  s.family_ = Family::sum_two_squares;
  s.D_ = D;
  s.factor2_ = with_factor2;
  s.degree_ = 2;
  s.pole_order_s1_ = 0;
  s.second_moment_pole_ = -1;
  s.label_ = "sum2sq(D=" + std::to_string(D) + (with_factor2 ? ",factor2)" : ")");
  return s;
}

CoefficientSource CoefficientSource::gauss_angle() {
  CoefficientSource s;
  s.family_ = Family::gauss_angle;
  s.degree_ = 2;
  s.pole_order_s1_ = 0;
  s.second_moment_pole_ = -1;
  s.label_ = "gauss";
  return s;
}

CoefficientSource CoefficientSource::ec_trace(const EllipticCurve& curve) {
  CoefficientSource s;
  s.family_ = Family::ec_trace;
  s.degree_ = 2;
  s.pole_order_s1_ = 0;
  s.second_moment_pole_ = 1;
  s.curves_ = {curve};
  s.label_ = "ec(" + curve.name + ")";
  return s;
}

CoefficientSource CoefficientSource::ec_pair(const EllipticCurve& c1, const EllipticCurve& c2) {
  CoefficientSource s;
  s.family_ = Family::ec_pair;
  s.degree_ = 4;
  s.pole_order_s1_ = 0;
  s.second_moment_pole_ = -1;
  s.curves_ = {c1, c2};
  s.label_ = "ecpair(" + c1.name + "," + c2.name + ")";
  return s;
}

double CoefficientSource::operator()(std::uint64_t p) const {
  switch (family_) {
    case Family::zeta:
      return 1.0;
    case Family::dirichlet_pair:
      return dirichlet_pair_coeff(q_, a_, b_, p);
    case Family::qr_race:
      return (*qr_)(p);
    case Family::sum_two_squares:
      if ((2 * static_cast<std::uint64_t>(D_)) % p == 0) return 0.0;
      return lambda_sum2sq(p, D_, factor2_);
    case Family::gauss_angle:
      return lambda_gauss(p);
    case Family::ec_trace:
      if (curves_[0].has_bad_reduction(p)) return 0.0;
      return static_cast<double>(ec_ap(curves_[0], p)) / std::sqrt(static_cast<double>(p));
    case Family::ec_pair:
      return lambda_ec_pair(curves_[0], curves_[1], p);
  }
  return 0.0;
}

}  // namespace primerace
