#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "primerace/race.hpp"
#include "primerace/zeros.hpp"

namespace primerace {

enum class DeltaMethod { montecarlo, fourier_inversion };
std::string to_string(DeltaMethod m);
DeltaMethod parse_delta_method(const std::string& s);

struct Histogram {
  static constexpr int kBins = 512;
  double lo = 0.0, hi = 0.0;
  std::vector<std::uint64_t> counts = std::vector<std::uint64_t>(kBins, 0);
  std::uint64_t underflow = 0, overflow = 0;

  std::vector<double> edges() const;
  std::uint64_t total() const;
  bool operator==(const Histogram&) const = default;
};

struct ChebyshevBound {
  enum class Side { upper, lower };  // upper bound on the upper density, lower on the lower
  double bound;
  Side side;
  bool operator==(const ChebyshevBound&) const = default;
};

/// Upper bound var/mean^2 (capped at 1) when mean < 0, lower bound
/// 1 - var/mean^2 (floored at 0) when mean > 0, nothing when mean = 0.
std::optional<ChebyshevBound> chebyshev_bound(double mean, double variance_total);

struct DistributionSummary {
  std::string sampler;  // "li" or "time_average"
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  std::uint64_t n_samples = 0;
  Histogram histogram;
  double delta = 0.0;
  double delta_stderr = 0.0;
  DeltaMethod delta_method = DeltaMethod::montecarlo;
  std::optional<ChebyshevBound> chebyshev;

  double truncation_T = 0.0;
  std::uint64_t seed = 0;
  std::string rng;
  double model_mean = 0.0;      // the mean passed in
  double model_variance = 0.0;  // variance(zs, T)
  std::size_t ordinates = 0;

  bool operator==(const DistributionSummary&) const = default;
};

struct SamplingOptions {
  unsigned workers = 1;
  std::uint64_t shard_size = 1u << 16;  // fixed, so the result ignores worker count
};

/// X = mean - sum_{gamma <= T} 2 Re(M e^{2 pi i theta} / (beta0 + i gamma)),
/// theta independent uniform.
DistributionSummary sample_li(const ZeroSet& zs, double mean, double T, std::uint64_t n, std::uint64_t seed,
                              const SamplingOptions& opts = {});

/// G_{S,T}(e^y) for y uniform on [2, y_max].
DistributionSummary sample_time_average(const ZeroSet& zs, double mean, double T, double y_max, std::uint64_t n,
                                        std::uint64_t seed, const SamplingOptions& opts = {});

/// Exact average of G_{S,T}(e^y) over y in [y0, y1].
double time_average_exact(const TrigPolynomial& g, double y0, double y1);

struct FourierProfile {
  static constexpr const char* kConvention = "hat(xi) = integral of exp(-i xi t) dmu(t)";
  std::vector<double> xi;
  std::vector<std::complex<double>> hat;
  double truncation_T = 0.0;
  double mean = 0.0;
  std::size_t ordinates = 0;  // distinct ordinates with M != 0
};

/// e^{-i mean xi} prod_{gamma <= T} J0(2 |xi| |M| / |beta0 + i gamma|).
FourierProfile fourier_hat(const ZeroSet& zs, double mean, double T, const std::vector<double>& xi_grid,
                           unsigned workers = 1);
std::string format_fourier_csv(const FourierProfile& fp);

/// First xi where prod min(1, sqrt(|beta0 + i gamma| / (pi xi |M|))) < threshold.
double fourier_cutoff(const ZeroSet& zs, double T, double threshold = 1e-8);
/// Uniform grid on [0, cutoff] with step chosen so t_extent * step < 0.1.
std::vector<double> fourier_grid(double cutoff, double t_extent);

class InversionRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DensityResult {
  std::vector<double> t;
  std::vector<double> phi;
  double raw_mass = 0.0;
};

/// phi(t) = (1/2pi) integral e^{i xi t} hat(xi) dxi by the trapezoid rule over
/// the profile grid (which starts at 0; negative xi by conjugate symmetry),
/// renormalized to unit mass. Refuses when the raw mass is more than 1% off
/// or fewer than 3 ordinates contribute.
DensityResult density_by_inversion(const FourierProfile& fp, const std::vector<double>& t_grid);

struct DeltaParams {
  std::uint64_t n_samples = 1000000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::size_t t_points = 4001;
  bool allow_fallback = false;
};

struct DeltaResult {
  double value = 0.0;
  double stderr_ = 0.0;
  DeltaMethod method = DeltaMethod::montecarlo;
  std::string diagnostic;
};

DeltaResult delta_estimate(const ZeroSet& zs, double mean, double T, DeltaMethod method,
                           const DeltaParams& params = {});

/// Fourier-inversion pipeline exposing the profile and density behind delta.
struct InversionRun {
  FourierProfile profile;
  DensityResult density;
  DeltaResult delta;
};
InversionRun invert(const ZeroSet& zs, double mean, double T, const DeltaParams& params = {});

struct Comparison {
  double rms = 0.0;
  double correlation = 0.0;
  bool correlation_defined = false;
  std::size_t points = 0;
  double y0 = 0.0, y1 = 0.0;
};

/// RMS difference and Pearson correlation of two equally long series.
Comparison compare_series(const std::vector<double>& a, const std::vector<double>& b);

/// E(e^y) against G_{S,T}(e^y) on `points` evenly spaced y in [y0, y1].
Comparison compare_empirical(const RaceTrajectory& traj, const ZeroSet& zs, double mean, double T, double y0,
                             double y1, std::size_t points = 20000);

}  // namespace primerace
