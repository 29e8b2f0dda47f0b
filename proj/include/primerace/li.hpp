#pragma once

#include <span>
#include <vector>

namespace primerace {

/// Logarithmic integral with origin 2: li(x) = integral of dt/log t over [2, x].
///
/// Evaluated by adaptive Simpson quadrature in the variable u = log t, where
/// the integrand e^u/u is smooth. The tolerance is absolute, relaxed to a few
/// ulps of the result once the result is large enough that the absolute
/// target is below double resolution.
class LiEvaluator {
 public:
  static constexpr double kLowerLimit = 2.0;

  explicit LiEvaluator(double quadrature_tolerance = 1e-10)
      : tolerance_(quadrature_tolerance) {}

  double tolerance() const { return tolerance_; }

  /// li(x); throws std::domain_error for x < 2.
  double operator()(double x) const;

  /// Integral of dt/log t over [a, b], 2 <= a <= b.
  double integrate(double a, double b) const;

 private:
  double tolerance_;
};

double li(double x);

/// li tabulated at a sorted list of abscissae (typically consecutive primes).
/// Each value is the previous one plus the quadrature over the gap, so the
/// table costs O(1) amortized per node; lookups between nodes integrate
/// from the nearest node at or below x.
class LiTable {
 public:
  LiTable() = default;
  LiTable(std::span<const double> nodes, const LiEvaluator& ev = LiEvaluator{});

  double operator()(double x) const;
  std::size_t size() const { return nodes_.size(); }

 private:
  LiEvaluator ev_;
  std::vector<double> nodes_;
  std::vector<double> values_;
};

/// Inverse of li on [2, inf): the x with li(x) = v, v >= 0.
double li_inverse(double v, const LiEvaluator& ev = LiEvaluator{});

}  // namespace primerace
