#include "primerace/bessel.hpp"

#include <cmath>
#include <numbers>

namespace primerace {
namespace {

constexpr double kSeriesLimit = 12.0;

double j0_series(double x) {
  // sum_k (-1)^k (x/2)^{2k} / (k!)^2
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

double j0_asymptotic(double x) {
  // |a_k| = prod_{j=1..k} (2j-1)^2 / (k! 8^k); P takes even k, Q odd k.
  double p = 0.0, q = 0.0;
  double a = 1.0;       // a_k / x^k
  double prev = 1e300;
  for (int k = 0; k < 60; ++k) {
    if (k > 0) a *= static_cast<double>((2 * k - 1) * (2 * k - 1)) / (8.0 * k * x);
    const double mag = std::abs(a);
    if (mag > prev) break;  // asymptotic series starts diverging
    // P = 1 - 9/(128x^2) + ..., Q = -1/(8x) + 75/(1024x^3) - ...
    const int sign = (k / 2) % 2 == 0 ? 1 : -1;
    if (k % 2 == 0)
      p += sign * a;
    else
      q -= sign * a;
    prev = mag;
    if (mag < 1e-17) break;
  }
  const double chi = x - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  x = std::abs(x);
  return x < kSeriesLimit ? j0_series(x) : j0_asymptotic(x);
}

}  // namespace primerace
