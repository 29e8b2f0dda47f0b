#include "primerace/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "primerace/modarith.hpp"
#include "primerace/primes.hpp"
#include "primerace/rng.hpp"

namespace primerace {
namespace {

struct BValues {
  __int128 b2, b4, b6, b8;
};

BValues b_values(const EllipticCurve& e) {
  const __int128 a1 = e.a1, a2 = e.a2, a3 = e.a3, a4 = e.a4, a6 = e.a6;
  BValues b;
  b.b2 = a1 * a1 + 4 * a2;
  b.b4 = 2 * a4 + a1 * a3;
  b.b6 = a3 * a3 + 4 * a6;
  b.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  return b;
}

std::uint64_t reduce(__int128 v, std::uint64_t p) {
  __int128 r = v % static_cast<__int128>(p);
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

// Direct count over F_p; used for the tiny primes where completing the
// square is unavailable (p = 2) or not worth the table.
std::int64_t ap_by_count(const EllipticCurve& e, std::uint64_t p) {
  const std::uint64_t a1 = reduce(e.a1, p), a2 = reduce(e.a2, p), a3 = reduce(e.a3, p),
                      a4 = reduce(e.a4, p), a6 = reduce(e.a6, p);
  std::int64_t points = 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::uint64_t rhs = (x * x % p * x + a2 * x % p * x + a4 * x + a6) % p;
    for (std::uint64_t y = 0; y < p; ++y) {
      const std::uint64_t lhs = (y * y + a1 * x % p * y + a3 * y) % p;
      if (lhs == rhs) ++points;
    }
  }
  return static_cast<std::int64_t>(p) + 1 - points;
}

std::vector<std::uint64_t> factor_small(__int128 n) {
  std::vector<std::uint64_t> out;
  if (n < 0) n = -n;
  for (std::uint64_t d = 2; static_cast<__int128>(d) * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<std::uint64_t>(n));
  return out;
}

// Short Weierstrass curve y^2 = x^3 + A x + B over F_p, p < 2^32.
struct ShortCurve {
  std::uint64_t p, A, B;
};

struct Point {
  std::uint64_t x = 0, y = 0;
  bool inf = true;
};

Point add(const ShortCurve& c, const Point& P, const Point& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  const std::uint64_t p = c.p;
  std::uint64_t lambda;
  if (P.x == Q.x) {
    if ((P.y + Q.y) % p == 0) return Point{};
    const std::uint64_t num = (3 * mulmod(P.x, P.x, p) + c.A) % p;
    lambda = mulmod(num, invmod(2 * P.y % p, p), p);
  } else {
    const std::uint64_t num = (Q.y + p - P.y) % p;
    const std::uint64_t den = (Q.x + p - P.x) % p;
    lambda = mulmod(num, invmod(den, p), p);
  }
  const std::uint64_t x3 = (mulmod(lambda, lambda, p) + 2 * p - P.x - Q.x) % p;
  const std::uint64_t y3 = (mulmod(lambda, (P.x + p - x3) % p, p) + p - P.y) % p;
  return Point{x3, y3, false};
}

Point mul(const ShortCurve& c, Point P, std::uint64_t k) {
  Point R;
  while (k) {
    if (k & 1) R = add(c, R, P);
    P = add(c, P, P);
    k >>= 1;
  }
  return R;
}

const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> primes = sieve_primes(1u << 17);
  return primes;
}

// Order of P given a positive multiple m of it.
std::uint64_t order_from_multiple(const ShortCurve& c, const Point& P, std::uint64_t m) {
  std::uint64_t rest = m;
  std::vector<std::uint64_t> factors;
  for (std::uint64_t q : small_primes()) {
    if (q * q > rest) break;
    if (rest % q == 0) {
      factors.push_back(q);
      while (rest % q == 0) rest /= q;
    }
  }
  if (rest > 1) factors.push_back(rest);
  std::uint64_t order = m;
  for (std::uint64_t q : factors) {
    while (order % q == 0 && mul(c, P, order / q).inf) order /= q;
  }
  return order;
}

// Some m in (0, hi] with mP = O, searching the interval [lo, hi] that
// is known to contain the group order.
std::uint64_t annihilator(const ShortCurve& c, const Point& P, std::uint64_t lo,
                          std::uint64_t hi) {
  const std::uint64_t width = hi - lo + 1;
  const std::uint64_t s = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(width))));
  std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> baby;  // x -> (j, y)
  baby.reserve(2 * s);
  Point J = P;
  for (std::uint64_t j = 1; j < s; ++j) {
    if (J.inf) return j;
    auto [it, fresh] = baby.try_emplace(J.x, j, J.y);
    if (!fresh) {
      // jP = +-j'P, so (j -+ j')P = O.
      const auto [j0, y0] = it->second;
      return y0 == J.y ? j - j0 : j + j0;
    }
    J = add(c, J, P);
  }
  const Point G = mul(c, P, s);
  Point Z = mul(c, P, lo);
  for (std::uint64_t k = 0; k * s <= width; ++k) {
    const std::uint64_t base = lo + k * s;
    if (Z.inf) return base;
    if (auto it = baby.find(Z.x); it != baby.end()) {
      const auto [j, y] = it->second;
      if (y == Z.y) {
        if (base > j) return base - j;
      } else {
        return base + j;
      }
    }
    Z = add(c, Z, G);
  }
  throw std::logic_error("bsgs: no annihilator in Hasse interval");
}

std::optional<Point> point_with_x(const ShortCurve& c, std::uint64_t x) {
  const std::uint64_t p = c.p;
  const std::uint64_t rhs = (mulmod(mulmod(x, x, p), x, p) + mulmod(c.A, x, p) + c.B) % p;
  auto y = sqrt_mod(rhs, p);
  if (!y) return std::nullopt;
  return Point{x, *y, false};
}

}  // namespace

EllipticCurve EllipticCurve::from_coefficients(std::int64_t a1, std::int64_t a2,
                                               std::int64_t a3, std::int64_t a4,
                                               std::int64_t a6, std::string name) {
  EllipticCurve e;
  e.a1 = a1;
  e.a2 = a2;
  e.a3 = a3;
  e.a4 = a4;
  e.a6 = a6;
  e.name = std::move(name);
  const __int128 disc = e.discriminant();
  if (disc == 0) throw std::invalid_argument("singular Weierstrass model");
  e.conductor_primes = factor_small(disc);
  if (e.name.empty()) e.name = "[" + e.coefficient_string() + "]";
  return e;
}

__int128 EllipticCurve::discriminant() const {
  const BValues b = b_values(*this);
  return -b.b2 * b.b2 * b.b8 - 8 * b.b4 * b.b4 * b.b4 - 27 * b.b6 * b.b6 +
         9 * b.b2 * b.b4 * b.b6;
}

bool EllipticCurve::has_bad_reduction(std::uint64_t p) const {
  return std::find(conductor_primes.begin(), conductor_primes.end(), p) !=
         conductor_primes.end();
}

std::string EllipticCurve::coefficient_string() const {
  std::ostringstream os;
  os << a1 << ',' << a2 << ',' << a3 << ',' << a4 << ',' << a6;
  return os.str();
}

std::vector<std::string> EllipticCurve::preset_names() {
  return {"E1", "E2", "E0", "E0prime"};
}

EllipticCurve EllipticCurve::preset(const std::string& name) {
  EllipticCurve e;
  if (name == "E1") {
    e = from_coefficients(0, 0, 1, -1, 0, "E1");  // y^2 + y = x^3 - x
    e.analytic_rank_hint = 1;
  } else if (name == "E2") {
    e = from_coefficients(0, 1, 1, -2, 0, "E2");  // y^2 + y = x^3 + x^2 - 2x
    e.analytic_rank_hint = 2;
  } else if (name == "E0") {
    e = from_coefficients(0, -1, 1, 0, 0, "E0");  // y^2 + y = x^3 - x^2
    e.analytic_rank_hint = 0;
  } else if (name == "E0prime") {
    e = from_coefficients(0, 1, 1, 1, 0, "E0prime");  // y^2 + y = x^3 + x^2 + x
    e.analytic_rank_hint = 0;
  } else {
    throw std::invalid_argument("unknown curve preset: " + name);
  }
  return e;
}

EllipticCurve EllipticCurve::parse(const std::string& text) {
  for (const auto& n : preset_names())
    if (text == n) return preset(n);
  std::vector<std::int64_t> coeffs;
  std::istringstream is(text);
  std::string field;
  while (std::getline(is, field, ',')) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(field, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad curve coefficient '" + field + "'");
    }
    if (used != field.size()) throw std::invalid_argument("bad curve coefficient '" + field + "'");
    coeffs.push_back(v);
  }
  if (coeffs.size() != 5)
    throw std::invalid_argument("curve must be a preset or 'a1,a2,a3,a4,a6': " + text);
  return from_coefficients(coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4]);
}

std::int64_t ec_ap_legendre(const EllipticCurve& e, std::uint64_t p) {
  if (e.has_bad_reduction(p)) throw BadReduction(p);
  if (p == 2) return ap_by_count(e, p);
  const BValues b = b_values(e);
  const std::uint64_t c2 = reduce(b.b2, p), c1 = reduce(2 * b.b4, p), c0 = reduce(b.b6, p);
  // chi[v] = Legendre symbol (v/p).
  thread_local std::vector<std::int8_t> chi;
  chi.assign(p, -1);
  chi[0] = 0;
  for (std::uint64_t y = 1; y <= p / 2; ++y) chi[y * y % p] = 1;
  std::int64_t sum = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    // 4x^3 + b2 x^2 + 2 b4 x + b6 by Horner.
    std::uint64_t v = (4 * x + c2) % p;
    v = (v * x + c1) % p;
    v = (v * x + c0) % p;
    sum += chi[v];
  }
  return -sum;
}

std::int64_t ec_ap_bsgs(const EllipticCurve& e, std::uint64_t p) {
  if (e.has_bad_reduction(p)) throw BadReduction(p);
  if (p <= 229 || p >= (std::uint64_t{1} << 32))
    throw std::domain_error("ec_ap_bsgs: p must lie in (229, 2^32)");
  const BValues b = b_values(e);
  const __int128 c4 = b.b2 * b.b2 - 24 * b.b4;
  const __int128 c6 = -b.b2 * b.b2 * b.b2 + 36 * b.b2 * b.b4 - 216 * b.b6;
  const ShortCurve curve{p, reduce(-27 * c4, p), reduce(-54 * c6, p)};

  std::uint64_t d = 2;
  while (kronecker(static_cast<std::int64_t>(d), p) != -1) ++d;
  const std::uint64_t d2 = mulmod(d, d, p);
  const ShortCurve twist{p, mulmod(curve.A, d2, p), mulmod(curve.B, mulmod(d2, d, p), p)};

  const std::uint64_t r = isqrt(4 * p);  // floor(2 sqrt p)
  const std::uint64_t lo = p + 1 - r, hi = p + 1 + r;

  CounterRng rng(derive_key(p, 0x4d657374u));
  std::uint64_t exp_e = 1, exp_t = 1;  // lcm of point orders on E and on the twist
  for (int attempt = 0; attempt < 400; ++attempt) {
    const bool on_twist = attempt % 2 == 1;
    const ShortCurve& c = on_twist ? twist : curve;
    std::optional<Point> P;
    while (!P) P = point_with_x(c, rng.next() % p);
    const std::uint64_t ord = order_from_multiple(c, *P, annihilator(c, *P, lo, hi));
    std::uint64_t& acc = on_twist ? exp_t : exp_e;
    acc = std::lcm(acc, ord);

    std::uint64_t found = 0;
    int count = 0;
    for (std::uint64_t n = (lo + exp_e - 1) / exp_e * exp_e; n <= hi; n += exp_e) {
      if ((2 * p + 2 - n) % exp_t == 0) {
        found = n;
        if (++count > 1) break;
      }
    }
    if (count == 1)
      return static_cast<std::int64_t>(p + 1) - static_cast<std::int64_t>(found);
  }
  throw std::runtime_error("ec_ap_bsgs: group order not isolated at p=" + std::to_string(p));
}

std::int64_t ec_ap(const EllipticCurve& e, std::uint64_t p) {
  if (e.has_bad_reduction(p)) throw BadReduction(p);
  if (p < kBsgsCutoff) return ec_ap_legendre(e, p);
  return ec_ap_bsgs(e, p);
}

}  // namespace primerace
