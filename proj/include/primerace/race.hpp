#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "primerace/coefficients.hpp"
#include "primerace/li.hpp"

namespace primerace {

struct RaceTerm {
  CoefficientSource source;
  double weight = 1.0;
};

/// A weighted collection of coefficient sources. The pole correction
/// li_coefficient = sum a_f m(L(f,.),1) defaults to the value implied by the
/// sources (-1 for the pi(x) vs li(x) race).
struct RaceSpec {
  std::vector<RaceTerm> terms;
  double beta0 = 0.5;
  std::optional<double> li_coefficient_override;

  double li_coefficient() const;
  std::string label() const;
  /// lambda contributions summed over the terms at p.
  double contribution(std::uint64_t p) const;
};

struct Breakpoint {
  std::uint64_t p;
  double cumulative;  // S(p), right-continuous
  bool operator==(const Breakpoint&) const = default;
};

/// Piecewise-constant S(x) = sum_{p <= x} sum_f a_f lambda_f(p).
///
/// The first breakpoint is always at x = 2; after that only primes with a
/// nonzero contribution appear.
struct RaceTrajectory {
  std::string family;
  double beta0 = 0.5;
  double li_coefficient = 0.0;
  double xmax = 2.0;
  std::vector<std::string> metadata;  // extra "key=value" header lines
  std::vector<Breakpoint> breakpoints;

  /// S(x) for 2 <= x.
  double value(double x) const;
  bool operator==(const RaceTrajectory&) const = default;
};

struct AccumulateOptions {
  unsigned workers = 1;
  std::uint64_t chunk = 1u << 16;  // primes per work item
};

RaceTrajectory accumulate(const RaceSpec& spec, double xmax, const AccumulateOptions& opts = {});

/// Normalized race E(x) = (log x / x^beta0) (S(x) + li_coefficient li(x)).
/// A LiTable built over the breakpoints makes repeated calls cheap.
class Normalizer {
 public:
  explicit Normalizer(const RaceTrajectory& traj);

  double operator()(double x) const;
  /// E at x = e^y.
  double at_log(double y) const;
  /// Unnormalized S(x) + li_coefficient li(x).
  double race_value(double x) const;
  const LiTable& li_table() const { return li_; }

 private:
  const RaceTrajectory* traj_;
  LiTable li_;
};

/// E(x); throws std::domain_error for x outside [2, xmax].
double normalize(const RaceTrajectory& traj, double x);

/// Measure of {y in [y0, Y] : S(e^y) >= 0} / (Y - y0), exact between
/// breakpoints. With use_normalized the sign of E(e^y) is used instead.
double log_density_nonneg(const RaceTrajectory& traj, double y0, double Y,
                          bool use_normalized = true);
/// Complement measure of {S(e^y) < 0}, computed independently.
double log_density_strictneg(const RaceTrajectory& traj, double y0, double Y,
                             bool use_normalized = true);

/// Batch-means standard error of log_density_nonneg over `blocks` equal
/// y-subwindows.
double log_density_stderr(const RaceTrajectory& traj, double y0, double Y,
                          bool use_normalized = true, int blocks = 10);

struct TrajectoryStats {
  std::int64_t sign_changes = 0;
  double running_min = 0.0;   // of S + li_coefficient li at breakpoints
  double running_max = 0.0;
  double log_mean = 0.0;      // (1/(Y-y0)) integral of E(e^y) dy over [log 2, log xmax]
  double normalized_min = 0.0;
  double normalized_max = 0.0;
};

TrajectoryStats trajectory_stats(const RaceTrajectory& traj);

/// CSV with "# key=value" header comments and rows "p,S" (S to 12
/// significant digits).
void export_trajectory(const RaceTrajectory& traj, const std::filesystem::path& path);
RaceTrajectory import_trajectory(const std::filesystem::path& path);
std::string format_trajectory(const RaceTrajectory& traj);

}  // namespace primerace
