#include "primerace/li.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace primerace {
namespace {

struct Simpson {
  double tol;

  static double f(double u) { return std::exp(u) / u; }

  double refine(double a, double b, double fa, double fm, double fb,
                double whole, double eps, int depth) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double both = left + right;
    const double floor_eps =
        8.0 * std::numeric_limits<double>::epsilon() * std::abs(both);
    if (depth <= 0 || std::abs(both - whole) <= 15.0 * std::max(eps, floor_eps))
      return both + (both - whole) / 15.0;
    return refine(a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
  }

  double operator()(double ua, double ub) const {
    if (ub <= ua) return 0.0;
    const double fa = f(ua), fb = f(ub), fm = f(0.5 * (ua + ub));
    const double whole = (ub - ua) / 6.0 * (fa + 4.0 * fm + fb);
    return refine(ua, ub, fa, fm, fb, whole, tol, 48);
  }
};

}  // namespace

double LiEvaluator::integrate(double a, double b) const {
  if (!(a >= kLowerLimit) || b < a) throw std::domain_error("li: bad interval");
  return Simpson{tolerance_}(std::log(a), std::log(b));
}

double LiEvaluator::operator()(double x) const {
  if (!(x >= kLowerLimit)) throw std::domain_error("li: x must be >= 2");
  return integrate(kLowerLimit, x);
}

double li(double x) { return LiEvaluator{}(x); }

LiTable::LiTable(std::span<const double> nodes, const LiEvaluator& ev) : ev_(ev) {
  nodes_.reserve(nodes.size() + 1);
  values_.reserve(nodes.size() + 1);
  nodes_.push_back(LiEvaluator::kLowerLimit);
  values_.push_back(0.0);
  // Compensated running sum of the per-gap integrals.
  double sum = 0.0, carry = 0.0;
  for (double x : nodes) {
    if (x <= nodes_.back()) continue;
    const double piece = ev_.integrate(nodes_.back(), x) - carry;
    const double t = sum + piece;
    carry = (t - sum) - piece;
    sum = t;
    nodes_.push_back(x);
    values_.push_back(sum);
  }
}

double LiTable::operator()(double x) const {
  if (!(x >= LiEvaluator::kLowerLimit)) throw std::domain_error("li: x must be >= 2");
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  return values_[k] + ev_.integrate(nodes_[k], x);
}

double li_inverse(double v, const LiEvaluator& ev) {
  if (!(v >= 0.0)) throw std::domain_error("li_inverse: negative value");
  if (v == 0.0) return LiEvaluator::kLowerLimit;
  // li(x) ~ x/log x; Newton on li(x) - v with li'(x) = 1/log x.
  double x = std::max(LiEvaluator::kLowerLimit, v * std::log(std::max(v, 3.0)));
  for (int it = 0; it < 100; ++it) {
    const double step = (ev(x) - v) * std::log(x);
    double next = x - step;
    if (next < LiEvaluator::kLowerLimit) next = 0.5 * (x + LiEvaluator::kLowerLimit);
    if (std::abs(next - x) <= 1e-13 * x) return next;
    x = next;
  }
  return x;
}

}  // namespace primerace
