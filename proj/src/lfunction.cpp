#include "primerace/lfunction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "primerace/modarith.hpp"
#include "primerace/parallel.hpp"

namespace primerace {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

bool squarefree(std::uint64_t n) {
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

// B_{2k}/(2k)! for k = 1..K+1, from 2 zeta(2k)/(2 pi)^{2k}.
const std::array<double, CriticalLineEvaluator::kBernoulliTerms + 2>& bernoulli_coeffs() {
  static const auto table = [] {
    std::array<double, CriticalLineEvaluator::kBernoulliTerms + 2> c{};
    for (int k = 1; k < static_cast<int>(c.size()); ++k) {
      double z;
      if (k == 1) {
        z = kPi * kPi / 6.0;
      } else {
        // direct sum plus Euler-Maclaurin tail; plenty for k >= 2
        const int n0 = 1000;
        double s = 0.0;
        for (int n = n0; n >= 1; --n) s += std::pow(static_cast<double>(n), -2.0 * k);
        const double nn = n0;
        s += std::pow(nn, 1.0 - 2.0 * k) / (2.0 * k - 1.0) - 0.5 * std::pow(nn, -2.0 * k);
        z = s;
      }
      const double mag = 2.0 * z * std::pow(2.0 * kPi, -2.0 * k);
      c[k] = (k % 2 == 1) ? mag : -mag;
    }
    return c;
  }();
  return table;
}

// Remainder after K Bernoulli terms of the Hurwitz tail at w.
double hurwitz_remainder(cplx s, double w) {
  constexpr int K = CriticalLineEvaluator::kBernoulliTerms;
  const double sigma = s.real();
  double log_mag = std::log(std::abs(bernoulli_coeffs()[K + 1]));
  for (int j = 0; j <= 2 * K; ++j) log_mag += std::log(std::abs(s + static_cast<double>(j)));
  log_mag -= (sigma + 2.0 * K + 1.0) * std::log(w);
  log_mag += std::log(std::abs(s + (2.0 * K + 1.0)) / (sigma + 2.0 * K + 1.0));
  return std::exp(log_mag);
}

double bound_for(const LFunction& f, int n, cplx s) {
  const std::uint64_t q = f.modulus();
  double total = 0.0;
  for (std::uint64_t a = 1; a <= q; ++a) {
    if (f.chi(a) == 0) continue;
    total += hurwitz_remainder(s, n + static_cast<double>(a) / static_cast<double>(q));
  }
  return total * std::pow(static_cast<double>(q), -s.real());
}

double validated_height(const LFunction& f, int n, double precision) {
  if (bound_for(f, n, cplx(0.5, 0.0)) > precision) return -1.0;
  double lo = 0.0;
  double hi = 2.0 * kPi * (n + 1.0);
  while (bound_for(f, n, cplx(0.5, hi)) <= precision) hi *= 2.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (bound_for(f, n, cplx(0.5, mid)) <= precision ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

bool is_fundamental_discriminant(std::int64_t d) {
  if (d == 0 || d == 1) return false;
  const std::uint64_t ad = static_cast<std::uint64_t>(d < 0 ? -d : d);
  const std::int64_t r = ((d % 4) + 4) % 4;
  if (r == 1) return squarefree(ad);
  if (r != 0) return false;
  const std::int64_t m = d / 4;
  const std::int64_t rm = ((m % 4) + 4) % 4;
  return (rm == 2 || rm == 3) && squarefree(ad / 4);
}

LFunction LFunction::dirichlet(std::int64_t d) {
  if (!is_fundamental_discriminant(d))
    throw std::invalid_argument("not a fundamental discriminant: " + std::to_string(d));
  return LFunction(d);
}

LFunction LFunction::parse(const std::string& text) {
  if (text == "zeta") return zeta();
  const std::string prefix = "dirichlet:";
  if (text.rfind(prefix, 0) != 0) throw std::invalid_argument("unknown L-function: " + text);
  const std::string arg = text.substr(prefix.size());
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(arg, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad modulus in " + text);
  }
  if (used != arg.size()) throw std::invalid_argument("bad modulus in " + text);
  if (arg[0] == '-' || arg[0] == '+') return dirichlet(v);
  const bool pos = is_fundamental_discriminant(v);
  const bool neg = is_fundamental_discriminant(-v);
  if (pos && neg)
    throw std::invalid_argument("ambiguous character for modulus " + arg + "; give the sign (dirichlet:+" +
                                arg + " or dirichlet:-" + arg + ")");
  if (!pos && !neg) throw std::invalid_argument("no real primitive character of modulus " + arg);
  return dirichlet(pos ? v : -v);
}

int LFunction::chi(std::uint64_t n) const {
  if (d_ == 1) return 1;
  return kronecker(d_, n);
}

std::string LFunction::label() const {
  if (d_ == 1) return "zeta";
  return "chi_" + std::to_string(d_);
}

cplx log_gamma(cplx z) {
  if (z.real() <= 0.0) throw std::domain_error("log_gamma: Re z must be positive");
  cplx shift = 0.0;
  while (z.real() < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  static constexpr double b2k[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6, -3617.0 / 510};
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx pw = inv;
  cplx series = 0.0;
  for (int k = 1; k <= 8; ++k) {
    series += b2k[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * pw;
    pw *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift;
}

CriticalLineEvaluator::CriticalLineEvaluator(LFunction f, int em_terms, double precision_target)
    : f_(f), n_(em_terms), precision_(precision_target) {
  if (em_terms < 1) throw std::invalid_argument("em_terms must be positive");
  if (!(precision_target > 0.0)) throw std::invalid_argument("precision_target must be positive");
  t_max_ = validated_height(f_, n_, precision_);
  const std::uint64_t top = f_.modulus() * static_cast<std::uint64_t>(n_);
  for (std::uint64_t m = 1; m <= top; ++m) {
    const int c = f_.chi(m);
    if (c == 0) continue;
    const double lm = std::log(static_cast<double>(m));
    log_m_.push_back(lm);
    amp_.push_back(c / std::sqrt(static_cast<double>(m)));
  }
}

CriticalLineEvaluator CriticalLineEvaluator::for_height(LFunction f, double t_max, double precision_target) {
  if (!(t_max >= 0.0)) throw std::invalid_argument("t_max must be nonnegative");
  int hi = 4;
  while (validated_height(f, hi, precision_target) < t_max) hi *= 2;
  int lo = hi / 2;
  if (validated_height(f, lo, precision_target) >= t_max) lo = 0;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (validated_height(f, mid, precision_target) >= t_max ? hi : lo) = mid;
  }
  return CriticalLineEvaluator(f, hi, precision_target);
}

double CriticalLineEvaluator::remainder_bound(cplx s) const { return bound_for(f_, n_, s); }

cplx CriticalLineEvaluator::tails(cplx s) const {
  constexpr int K = kBernoulliTerms;
  const auto& c = bernoulli_coeffs();
  const std::uint64_t q = f_.modulus();
  const bool at_pole = s == cplx(1.0, 0.0);
  cplx total = 0.0;
  for (std::uint64_t a = 1; a <= q; ++a) {
    const int ch = f_.chi(a);
    if (ch == 0) continue;
    const double w = n_ + static_cast<double>(a) / static_cast<double>(q);
    const double lw = std::log(w);
    const cplx w_s = std::exp(-s * lw);  // w^{-s}
    // the 1/(s-1) parts cancel across a for characters; at s = 1 keep -log w
    cplx t = at_pole ? cplx(-lw) : w * w_s / (s - 1.0);
    t += 0.5 * w_s;
    cplx rising = s;
    cplx wp = w_s / w;
    const double inv_w2 = 1.0 / (w * w);
    for (int k = 1; k <= K; ++k) {
      t += c[k] * rising * wp;
      rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
      wp *= inv_w2;
    }
    total += static_cast<double>(ch) * t;
  }
  return total * std::exp(-s * std::log(static_cast<double>(q)));
}

cplx CriticalLineEvaluator::evaluate_at(cplx s) const {
  if (s == cplx(1.0, 0.0) && f_.is_zeta()) throw std::domain_error("zeta has a pole at s = 1");
  CompensatedSum re, im;
  const std::uint64_t top = f_.modulus() * static_cast<std::uint64_t>(n_);
  for (std::uint64_t m = 1; m <= top; ++m) {
    const int c = f_.chi(m);
    if (c == 0) continue;
    const cplx v = static_cast<double>(c) * std::exp(-s * std::log(static_cast<double>(m)));
    re.add(v.real());
    im.add(v.imag());
  }
  return cplx(re.value(), im.value()) + tails(s);
}

cplx CriticalLineEvaluator::evaluate(double t) const {
  if (!(std::abs(t) <= t_max_)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "t=%.6g outside validated range |t| <= %.6g (em_terms=%d)", t, t_max_, n_);
    throw std::out_of_range(buf);
  }
  CompensatedSum re, im;
  for (std::size_t i = 0; i < log_m_.size(); ++i) {
    const double ph = t * log_m_[i];
    re.add(amp_[i] * std::cos(ph));
    im.add(-amp_[i] * std::sin(ph));
  }
  return cplx(re.value(), im.value()) + tails(cplx(0.5, t));
}

double CriticalLineEvaluator::theta(double t) const {
  const double kappa = f_.parity();
  return log_gamma(cplx((0.5 + kappa) / 2.0, t / 2.0)).imag() +
         0.5 * t * std::log(static_cast<double>(f_.modulus()) / kPi);
}

double CriticalLineEvaluator::hardy_z(double t) const {
  const double th = theta(t);
  return (std::polar(1.0, th) * evaluate(t)).real();
}

double zero_count_main_term(const LFunction& f, double T) {
  if (T <= 0.0) return 0.0;
  const double q = static_cast<double>(f.modulus());
  const double v = T / (2.0 * kPi) * std::log(q * T / (2.0 * kPi * std::numbers::e)) + (f.is_zeta() ? 0.875 : 0.0);
  return std::max(0.0, v);
}

ZeroScan find_zeros(const CriticalLineEvaluator& ev, double t_min, double t_max, const ZeroScanOptions& opts) {
  if (!(t_min >= 0.0)) throw std::domain_error("find_zeros: t_min must be >= 0");
  if (!(opts.step > 0.0) || !(opts.tolerance > 0.0)) throw std::invalid_argument("find_zeros: bad step/tolerance");
  ZeroScan out;
  if (!(t_max > t_min)) return out;
  if (t_max > ev.t_max()) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "find_zeros: t_max=%.6g beyond validated range %.6g", t_max, ev.t_max());
    throw std::out_of_range(buf);
  }

  const auto steps = static_cast<std::size_t>(std::ceil((t_max - t_min) / opts.step));
  std::vector<double> grid(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) grid[i] = std::min(t_max, t_min + static_cast<double>(i) * opts.step);
  grid.back() = t_max;

  std::vector<double> z(grid.size());
  constexpr std::size_t kChunk = 256;
  const std::size_t chunks = (grid.size() + kChunk - 1) / kChunk;
  parallel_for(chunks, opts.workers, [&](std::size_t c) {
    const std::size_t end = std::min(grid.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) z[i] = ev.hardy_z(grid[i]);
  });

  // exact zeros on grid points are kept once; the left endpoint is excluded
  std::vector<std::size_t> brackets;
  std::vector<double> exact;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (z[i + 1] == 0.0) {
      if (grid[i + 1] > 0.0) exact.push_back(grid[i + 1]);
    } else if (z[i] != 0.0 && std::signbit(z[i]) != std::signbit(z[i + 1])) {
      brackets.push_back(i);
    }
  }

  std::vector<double> roots(brackets.size());
  parallel_for(brackets.size(), opts.workers, [&](std::size_t j) {
    double lo = grid[brackets[j]], hi = grid[brackets[j] + 1];
    const bool neg_lo = std::signbit(z[brackets[j]]);
    while (hi - lo > opts.tolerance) {
      const double mid = 0.5 * (lo + hi);
      const double zm = ev.hardy_z(mid);
      if (zm == 0.0) {
        lo = hi = mid;
        break;
      }
      (std::signbit(zm) == neg_lo ? lo : hi) = mid;
    }
    roots[j] = 0.5 * (lo + hi);
  });

  out.gammas = std::move(roots);
  out.gammas.insert(out.gammas.end(), exact.begin(), exact.end());
  std::sort(out.gammas.begin(), out.gammas.end());

  const LFunction& f = ev.lfunction();
  out.expected_count = zero_count_main_term(f, t_max) - zero_count_main_term(f, t_min);
  const double q = static_cast<double>(f.modulus());
  const double slack = f.is_zeta() ? 2.0 : 2.0 + 0.5 * std::log(q * (t_max + 3.0));
  const double diff = static_cast<double>(out.gammas.size()) - out.expected_count;
  out.count_consistent = std::abs(diff) <= slack;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s: found %zu zeros in (%.6g, %.6g], main term %.3f, difference %+.3f (allowed %.3f)",
                f.label().c_str(), out.gammas.size(), t_min, t_max, out.expected_count, diff, slack);
  out.diagnostic = buf;
  return out;
}

}  // namespace primerace
