#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace primerace {

/// Riemann zeta or the L-function of a real primitive Dirichlet character,
/// identified by its fundamental discriminant (1 for zeta).
class LFunction {
 public:
  static LFunction zeta() { return LFunction(1); }
  /// Kronecker character (d/.) for a fundamental discriminant d != 1.
  static LFunction dirichlet(std::int64_t d);
  /// "zeta", "dirichlet:<q>" (q = |d|, when only one sign is a fundamental
  /// discriminant) or "dirichlet:<d>" with an explicit sign.
  static LFunction parse(const std::string& text);

  std::int64_t discriminant() const { return d_; }
  std::uint64_t modulus() const { return static_cast<std::uint64_t>(d_ < 0 ? -d_ : d_); }
  /// 0 for even characters (and zeta), 1 for odd.
  int parity() const { return d_ < 0 ? 1 : 0; }
  int chi(std::uint64_t n) const;
  bool is_zeta() const { return d_ == 1; }
  std::string label() const;

 private:
  explicit LFunction(std::int64_t d) : d_(d) {}
  std::int64_t d_;
};

bool is_fundamental_discriminant(std::int64_t d);

/// log Gamma(z) on the continuous branch for Re z > 0 (Stirling with shift).
std::complex<double> log_gamma(std::complex<double> z);

/// Euler-Maclaurin evaluation of L(s) via the Hurwitz decomposition
/// L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q).
///
/// em_terms is the number N of leading terms of each Hurwitz series; the
/// tail uses a fixed number of Bernoulli corrections. t_max() is the largest
/// height on the critical line where the remainder bound stays below
/// precision_target.
class CriticalLineEvaluator {
 public:
  static constexpr int kBernoulliTerms = 24;

  CriticalLineEvaluator(LFunction f, int em_terms, double precision_target = 1e-12);

  /// Smallest em_terms whose validated range covers [0, t_max].
  static CriticalLineEvaluator for_height(LFunction f, double t_max,
                                          double precision_target = 1e-12);

  const LFunction& lfunction() const { return f_; }
  int em_terms() const { return n_; }
  double precision_target() const { return precision_; }
  double t_max() const { return t_max_; }

  /// L(1/2 + it); throws std::out_of_range for |t| > t_max().
  std::complex<double> evaluate(double t) const;
  /// L(s) at an arbitrary s != 1 with Re s > -1; no range validation.
  std::complex<double> evaluate_at(std::complex<double> s) const;
  /// Bound on the Euler-Maclaurin remainder at s.
  double remainder_bound(std::complex<double> s) const;

  /// Phase making e^{i theta(t)} L(1/2+it) real (Riemann-Siegel theta for zeta).
  double theta(double t) const;
  /// Hardy-type real function Z(t) = e^{i theta(t)} L(1/2+it).
  double hardy_z(double t) const;

 private:
  std::complex<double> tails(std::complex<double> s) const;

  LFunction f_;
  int n_;
  double precision_;
  double t_max_;
  // Direct-sum terms m = 1..qN with chi(m) != 0, for s on the critical line.
  std::vector<double> log_m_;
  std::vector<double> amp_;  // chi(m) m^{-1/2}
};

struct ZeroScanOptions {
  double step = 0.05;
  double tolerance = 1e-8;
  unsigned workers = 1;
};

struct ZeroScan {
  std::vector<double> gammas;
  double expected_count = 0.0;  // main term of the zero-counting function
  bool count_consistent = true;
  std::string diagnostic;
};

/// Ordinates in (t_min, t_max] of sign changes of hardy_z, refined by
/// bisection. Throws std::out_of_range if t_max exceeds the evaluator range
/// and std::domain_error for t_min < 0.
ZeroScan find_zeros(const CriticalLineEvaluator& ev, double t_min, double t_max,
                    const ZeroScanOptions& opts = {});

/// Main term of the number of zeros with 0 < gamma <= T:
/// (T/2pi) log(qT/(2 pi e)) + 7/8 for zeta, without the 7/8 for characters.
double zero_count_main_term(const LFunction& f, double T);

}  // namespace primerace
