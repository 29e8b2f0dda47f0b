#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace primerace {

struct ZeroComponent {
  std::string label;
  double weight = 1.0;         // a_f
  int central_order = 0;       // m(L(f,.), beta0)
  int second_moment_pole = 0;  // m(L(f^(2),.), 1); -1 for a simple pole
  bool operator==(const ZeroComponent&) const = default;
};

struct ZeroEntry {
  double gamma = 0.0;
  std::size_t component = 0;
  int multiplicity = 1;
  std::string text;  // ordinate as read from a file; reused on output when present
  bool operator==(const ZeroEntry& o) const {
    return gamma == o.gamma && component == o.component && multiplicity == o.multiplicity;
  }
};

/// Distinct ordinate with its aggregated weighted multiplicity.
struct Ordinate {
  double gamma;
  double big_m;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ZeroSet {
  double beta0 = 0.5;
  std::vector<ZeroComponent> components;
  std::vector<ZeroEntry> entries;   // sorted by gamma
  std::vector<std::string> notes;   // free "# key=value" lines, kept verbatim

  bool operator==(const ZeroSet& o) const {
    return beta0 == o.beta0 && components == o.components && entries == o.entries;
  }

  /// Index of the component with this label, adding it if absent.
  std::size_t add_component(const ZeroComponent& c);
  void add_zero(double gamma, std::size_t component, int multiplicity = 1);
  /// Sorts entries and checks the invariants; throws std::invalid_argument.
  void normalize();

  /// Distinct ordinates gamma <= T (ordinates closer than 1e-9 are merged).
  std::vector<Ordinate> ordinates(double T) const;
  double max_gamma() const { return entries.empty() ? 0.0 : entries.back().gamma; }
};

/// Reads the zero-file format. With plain = true every non-comment line is a
/// bare ordinate assigned to `plain_component` with multiplicity 1.
ZeroSet load_zero_file(const std::string& path, bool plain = false,
                       const ZeroComponent& plain_component = {"zeta", 1.0, 0, -1});
ZeroSet parse_zero_text(const std::string& text, const std::string& name, bool plain = false,
                        const ZeroComponent& plain_component = {"zeta", 1.0, 0, -1});
std::string format_zero_set(const ZeroSet& zs);
void save_zero_file(const ZeroSet& zs, const std::string& path);
/// Bare ordinate list, one per line, in the original spelling when known.
std::string format_plain_ordinates(const ZeroSet& zs);

/// Ordinate text with at least 9 decimals that reads back to the same double.
std::string format_ordinate(double gamma);

constexpr double kOrdinateTolerance = 1e-9;

/// M(gamma) = sum of weight * multiplicity over entries at gamma; 0 if absent.
std::complex<double> big_m(const ZeroSet& zs, double gamma);
/// m_S = sum_f a_f (second_moment_pole [beta0 = 1/2] - central_order / beta0).
double mean_mS(const ZeroSet& zs);
/// 2 sum_{gamma <= T} |M(gamma)|^2 / (beta0^2 + gamma^2) over distinct ordinates.
double variance(const ZeroSet& zs, double T);

/// G_{S,T} as a function of y = log x, with the ordinate data precomputed.
class TrigPolynomial {
 public:
  TrigPolynomial(const ZeroSet& zs, double mean, double T);
  double at_log(double y) const;
  double operator()(double x) const;  // x >= 2
  double mean() const { return mean_; }
  std::size_t size() const { return gamma_.size(); }
  const std::vector<double>& gammas() const { return gamma_; }
  /// r_gamma = 2|M| / |beta0 + i gamma|, the amplitude of each cosine.
  const std::vector<double>& amplitudes() const { return amp_; }
  /// psi_gamma = arg(M / (beta0 + i gamma)).
  const std::vector<double>& phases() const { return phase_; }

 private:
  double mean_;
  std::vector<double> gamma_, cre_, cim_, amp_, phase_;
};

double g_trig(const ZeroSet& zs, double mean, double T, double x);
double g_trig_at_log(const ZeroSet& zs, double mean, double T, double y);

}  // namespace primerace
