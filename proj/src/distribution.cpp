#include "primerace/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "primerace/bessel.hpp"
#include "primerace/parallel.hpp"
#include "primerace/rng.hpp"

namespace primerace {

namespace {

constexpr double kPi = std::numbers::pi;

struct Shard {
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;  // powers of (x - center)
  std::uint64_t nonneg = 0;
  Histogram hist;
};

class Accumulator {
 public:
  Accumulator(double center, double lo, double hi) : center_(center), lo_(lo), hi_(hi) {
    scale_ = Histogram::kBins / (hi - lo);
  }

  void add(Shard& s, double x) const {
    const double d = x - center_;
    const double d2 = d * d;
    s.s1 += d;
    s.s2 += d2;
    s.s3 += d2 * d;
    if (x >= 0.0) ++s.nonneg;
    if (x < lo_) {
      ++s.hist.underflow;
    } else if (x >= hi_) {
      ++s.hist.overflow;
    } else {
      const auto bin = std::min<std::int64_t>(Histogram::kBins - 1, static_cast<std::int64_t>((x - lo_) * scale_));
      ++s.hist.counts[static_cast<std::size_t>(bin)];
    }
  }

  double center() const { return center_; }

 private:
  double center_, lo_, hi_, scale_;
};

// Runs gen(shard_index, begin, end, shard) over fixed-size shards and merges
// them in index order.
template <class Gen>
DistributionSummary run_sampler(const std::string& sampler, const ZeroSet& zs, double mean, double T, std::uint64_t n,
                                std::uint64_t seed, const SamplingOptions& opts, std::size_t ordinates, Gen&& gen) {
  if (n < 1) throw std::invalid_argument("sample count must be >= 1");
  if (opts.shard_size < 1) throw std::invalid_argument("shard size must be >= 1");
  DistributionSummary out;
  out.sampler = sampler;
  out.n_samples = n;
  out.truncation_T = T;
  out.seed = seed;
  out.rng = CounterRng::kName;
  out.model_mean = mean;
  out.model_variance = variance(zs, T);
  out.ordinates = ordinates;
  out.delta_method = DeltaMethod::montecarlo;
  out.chebyshev = chebyshev_bound(mean, out.model_variance);

  const double half = out.model_variance > 0.0 ? 6.0 * std::sqrt(out.model_variance) : 1.0;
  out.histogram.lo = mean - half;
  out.histogram.hi = mean + half;
  const Accumulator acc(mean, out.histogram.lo, out.histogram.hi);

  const std::uint64_t shards = (n + opts.shard_size - 1) / opts.shard_size;
  std::vector<Shard> parts(shards);
  parallel_for(shards, opts.workers, [&](std::size_t s) {
    const std::uint64_t begin = s * opts.shard_size;
    const std::uint64_t end = std::min(n, begin + opts.shard_size);
    gen(s, begin, end, acc, parts[s]);
  });

  CompensatedSum s1, s2, s3;
  std::uint64_t nonneg = 0;
  for (const auto& p : parts) {
    s1.add(p.s1);
    s2.add(p.s2);
    s3.add(p.s3);
    nonneg += p.nonneg;
    out.histogram.underflow += p.hist.underflow;
    out.histogram.overflow += p.hist.overflow;
    for (int b = 0; b < Histogram::kBins; ++b) out.histogram.counts[b] += p.hist.counts[b];
  }
  const double nn = static_cast<double>(n);
  const double m1 = s1.value() / nn, m2 = s2.value() / nn, m3 = s3.value() / nn;
  const double c2 = std::max(0.0, m2 - m1 * m1);
  const double c3 = m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1;
  out.mean = mean + m1;
  out.variance = n > 1 ? c2 * nn / (nn - 1.0) : 0.0;
  out.skewness = c2 > 0.0 ? c3 / std::pow(c2, 1.5) : 0.0;
  out.delta = static_cast<double>(nonneg) / nn;
  out.delta_stderr = std::sqrt(out.delta * (1.0 - out.delta) / nn);
  return out;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& f) {
  CompensatedSum s;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) s.add(0.5 * (x[i + 1] - x[i]) * (f[i] + f[i + 1]));
  return s.value();
}

// Integral of f over [0, inf) on the grid, interpolating f linearly at 0.
double positive_part(const std::vector<double>& x, const std::vector<double>& f) {
  if (x.empty() || x.back() <= 0.0) return 0.0;
  CompensatedSum s;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i], b = x[i + 1];
    if (b <= 0.0) continue;
    if (a >= 0.0) {
      s.add(0.5 * (b - a) * (f[i] + f[i + 1]));
    } else {
      const double f0 = f[i] + (f[i + 1] - f[i]) * (-a) / (b - a);
      s.add(0.5 * b * (f0 + f[i + 1]));
    }
  }
  return s.value();
}

}  // namespace

std::string to_string(DeltaMethod m) { return m == DeltaMethod::montecarlo ? "montecarlo" : "fourier_inversion"; }

DeltaMethod parse_delta_method(const std::string& s) {
  if (s == "montecarlo") return DeltaMethod::montecarlo;
  if (s == "fourier_inversion") return DeltaMethod::fourier_inversion;
  throw std::invalid_argument("unknown delta method: " + s);
}

std::vector<double> Histogram::edges() const {
  std::vector<double> e(kBins + 1);
  for (int i = 0; i <= kBins; ++i) e[i] = lo + (hi - lo) * i / kBins;
  return e;
}

std::uint64_t Histogram::total() const {
  std::uint64_t t = underflow + overflow;
  for (auto c : counts) t += c;
  return t;
}

std::optional<ChebyshevBound> chebyshev_bound(double mean, double variance_total) {
  if (mean == 0.0) return std::nullopt;
  const double r = variance_total / (mean * mean);
  if (mean < 0.0) return ChebyshevBound{std::min(1.0, r), ChebyshevBound::Side::upper};
  return ChebyshevBound{std::max(0.0, 1.0 - r), ChebyshevBound::Side::lower};
}

DistributionSummary sample_li(const ZeroSet& zs, double mean, double T, std::uint64_t n, std::uint64_t seed,
                              const SamplingOptions& opts) {
  const TrigPolynomial tp(zs, mean, T);
  const std::size_t k = tp.size();
  const auto& amp = tp.amplitudes();
  std::vector<std::uint32_t> offset(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double turns = tp.phases()[j] / (2.0 * kPi);
    offset[j] = static_cast<std::uint32_t>(static_cast<std::int64_t>(std::llround(turns * 4294967296.0)));
  }
  return run_sampler("li", zs, mean, T, n, seed, opts, k,
                     [&](std::size_t s, std::uint64_t begin, std::uint64_t end, const Accumulator& acc, Shard& out) {
                       CounterRng rng(derive_key(seed, s));
                       for (std::uint64_t i = begin; i < end; ++i) {
                         double sum = 0.0;
                         std::size_t j = 0;
                         for (; j + 1 < k; j += 2) {
                           const std::uint64_t u = rng.next();
                           sum += amp[j] * cos_turns(static_cast<std::uint32_t>(u >> 32) + offset[j]);
                           sum += amp[j + 1] * cos_turns(static_cast<std::uint32_t>(u) + offset[j + 1]);
                         }
                         if (j < k) sum += amp[j] * cos_turns(static_cast<std::uint32_t>(rng.next() >> 32) + offset[j]);
                         acc.add(out, mean - sum);
                       }
                     });
}

DistributionSummary sample_time_average(const ZeroSet& zs, double mean, double T, double y_max, std::uint64_t n,
                                        std::uint64_t seed, const SamplingOptions& opts) {
  if (!(y_max > 2.0)) throw std::invalid_argument("y_max must exceed 2");
  const TrigPolynomial tp(zs, mean, T);
  return run_sampler("time_average", zs, mean, T, n, seed, opts, tp.size(),
                     [&](std::size_t s, std::uint64_t begin, std::uint64_t end, const Accumulator& acc, Shard& out) {
                       CounterRng rng(derive_key(seed, s));
                       for (std::uint64_t i = begin; i < end; ++i)
                         acc.add(out, tp.at_log(2.0 + (y_max - 2.0) * rng.uniform()));
                     });
}

double time_average_exact(const TrigPolynomial& g, double y0, double y1) {
  if (!(y1 > y0)) throw std::invalid_argument("time average needs y1 > y0");
  CompensatedSum s;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double gm = g.gammas()[j], ps = g.phases()[j];
    s.add(g.amplitudes()[j] * (std::sin(gm * y1 + ps) - std::sin(gm * y0 + ps)) / gm);
  }
  return g.mean() - s.value() / (y1 - y0);
}

FourierProfile fourier_hat(const ZeroSet& zs, double mean, double T, const std::vector<double>& xi_grid,
                           unsigned workers) {
  const TrigPolynomial tp(zs, mean, T);
  FourierProfile fp;
  fp.xi = xi_grid;
  fp.hat.resize(xi_grid.size());
  fp.truncation_T = T;
  fp.mean = mean;
  fp.ordinates = tp.size();
  const auto& r = tp.amplitudes();
  parallel_for(xi_grid.size(), workers, [&](std::size_t i) {
    const double xi = xi_grid[i];
    double prod = 1.0;
    for (std::size_t j = 0; j < r.size() && prod != 0.0; ++j) prod *= bessel_j0(r[j] * std::abs(xi));
    fp.hat[i] = prod * std::polar(1.0, -mean * xi);
  });
  return fp;
}

std::string format_fourier_csv(const FourierProfile& fp) {
  std::string out = "xi,re,im\n";
  char buf[128];
  for (std::size_t i = 0; i < fp.xi.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", fp.xi[i], fp.hat[i].real(), fp.hat[i].imag());
    out += buf;
  }
  return out;
}

double fourier_cutoff(const ZeroSet& zs, double T, double threshold) {
  const TrigPolynomial tp(zs, 0.0, T);
  const auto& r = tp.amplitudes();
  if (r.empty()) return 0.0;
  const double log_thr = std::log(threshold);
  // |beta0 + i gamma| / (pi xi |M|) = 2 / (pi xi r)
  auto log_bound = [&](double xi) {
    double s = 0.0;
    for (double rj : r) s += std::min(0.0, 0.5 * std::log(2.0 / (kPi * xi * rj)));
    return s;
  };
  double hi = 1.0;
  while (log_bound(hi) >= log_thr) {
    hi *= 2.0;
    if (hi > 1e12) throw InversionRefused("Fourier transform bound does not decay; too few ordinates");
  }
  double lo = hi / 2.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (log_bound(mid) < log_thr ? hi : lo) = mid;
  }
  return hi;
}

std::vector<double> fourier_grid(double cutoff, double t_extent) {
  if (!(cutoff > 0.0) || !(t_extent > 0.0)) throw std::invalid_argument("fourier_grid: bad cutoff or extent");
  const double step = 0.1 / t_extent;
  const auto n = static_cast<std::size_t>(std::ceil(cutoff / step)) + 1;  // actual step <= 0.1 / t_extent
  std::vector<double> xi(n + 1);
  for (std::size_t i = 0; i <= n; ++i) xi[i] = cutoff * static_cast<double>(i) / static_cast<double>(n);
  return xi;
}

DensityResult density_by_inversion(const FourierProfile& fp, const std::vector<double>& t_grid) {
  if (fp.ordinates < 3)
    throw InversionRefused("inversion needs at least 3 contributing ordinates, profile has " +
                           std::to_string(fp.ordinates));
  if (fp.xi.size() < 2 || fp.xi.front() != 0.0) throw std::invalid_argument("profile grid must start at xi = 0");
  if (t_grid.size() < 2) throw std::invalid_argument("t grid needs at least two points");
  DensityResult out;
  out.t = t_grid;
  out.phi.resize(t_grid.size());
  const std::size_t m = fp.xi.size();
  std::vector<double> w(m);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double h = 0.5 * (fp.xi[i + 1] - fp.xi[i]);
    w[i] += h;
    w[i + 1] += h;
  }
  parallel_for(t_grid.size(), 1, [&](std::size_t k) {
    const double t = t_grid[k];
    CompensatedSum s;
    for (std::size_t i = 0; i < m; ++i) {
      const double ph = fp.xi[i] * t;
      s.add(w[i] * (std::cos(ph) * fp.hat[i].real() - std::sin(ph) * fp.hat[i].imag()));
    }
    out.phi[k] = s.value() / kPi;
  });
  out.raw_mass = trapezoid(out.t, out.phi);
  if (!(std::abs(out.raw_mass - 1.0) <= 0.01)) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "raw density mass %.6f deviates from 1 by more than 1%% (xi up to %.4g, %zu ordinates)",
                  out.raw_mass, fp.xi.back(), fp.ordinates);
    throw InversionRefused(buf);
  }
  for (double& v : out.phi) v /= out.raw_mass;
  return out;
}

InversionRun invert(const ZeroSet& zs, double mean, double T, const DeltaParams& params) {
  const TrigPolynomial tp(zs, mean, T);
  if (tp.size() < 3)
    throw InversionRefused("inversion needs at least 3 contributing ordinates, have " + std::to_string(tp.size()));
  double reach = 0.0;
  for (double r : tp.amplitudes()) reach += r;
  const double sd = std::sqrt(variance(zs, T));
  const double half = std::min(12.0 * sd, reach) * 1.02;
  const std::size_t np = std::max<std::size_t>(3, params.t_points | 1);  // odd, for the half-step comparison
  std::vector<double> t(np);
  for (std::size_t i = 0; i < np; ++i) t[i] = mean - half + 2.0 * half * static_cast<double>(i) / (np - 1.0);
  const double extent = std::max(std::abs(t.front()), std::abs(t.back()));

  InversionRun run;
  run.profile = fourier_hat(zs, mean, T, fourier_grid(fourier_cutoff(zs, T), extent), params.workers);
  run.density = density_by_inversion(run.profile, t);

  std::vector<double> t2, phi2;
  for (std::size_t i = 0; i < np; i += 2) {
    t2.push_back(run.density.t[i]);
    phi2.push_back(run.density.phi[i]);
  }
  const double d1 = std::clamp(positive_part(run.density.t, run.density.phi), 0.0, 1.0);
  const double d2 = std::clamp(positive_part(t2, phi2) / trapezoid(t2, phi2), 0.0, 1.0);
  run.delta.value = d1;
  run.delta.stderr_ = std::abs(d1 - d2) + 1e-8;
  run.delta.method = DeltaMethod::fourier_inversion;
  char buf[200];
  std::snprintf(buf, sizeof buf, "xi cutoff %.6g with %zu nodes, t in [%.6g, %.6g] with %zu nodes, raw mass %.8f",
                run.profile.xi.back(), run.profile.xi.size(), t.front(), t.back(), np, run.density.raw_mass);
  run.delta.diagnostic = buf;
  return run;
}

DeltaResult delta_estimate(const ZeroSet& zs, double mean, double T, DeltaMethod method, const DeltaParams& params) {
  auto monte_carlo = [&] {
    const auto s = sample_li(zs, mean, T, params.n_samples, params.seed, {params.workers});
    DeltaResult r;
    r.value = s.delta;
    r.stderr_ = s.delta_stderr;
    r.method = DeltaMethod::montecarlo;
    r.diagnostic = std::to_string(s.n_samples) + " samples, seed " + std::to_string(params.seed);
    return r;
  };
  if (method == DeltaMethod::montecarlo) return monte_carlo();
  try {
    return invert(zs, mean, T, params).delta;
  } catch (const InversionRefused& e) {
    if (!params.allow_fallback) throw;
    DeltaResult r = monte_carlo();
    r.diagnostic = std::string("inversion refused (") + e.what() + "); " + r.diagnostic;
    return r;
  }
}

Comparison compare_series(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("series must be nonempty and equally long");
  const double n = static_cast<double>(a.size());
  CompensatedSum sa, sb, sd;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa.add(a[i]);
    sb.add(b[i]);
    sd.add((a[i] - b[i]) * (a[i] - b[i]));
  }
  const double ma = sa.value() / n, mb = sb.value() / n;
  CompensatedSum caa, cbb, cab;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    caa.add(da * da);
    cbb.add(db * db);
    cab.add(da * db);
  }
  Comparison c;
  c.points = a.size();
  c.rms = std::sqrt(sd.value() / n);
  if (caa.value() > 0.0 && cbb.value() > 0.0) {
    c.correlation = cab.value() / std::sqrt(caa.value() * cbb.value());
    c.correlation_defined = true;
  } else {
    c.correlation = std::numeric_limits<double>::quiet_NaN();
  }
  return c;
}

Comparison compare_empirical(const RaceTrajectory& traj, const ZeroSet& zs, double mean, double T, double y0,
                             double y1, std::size_t points) {
  if (std::abs(traj.beta0 - zs.beta0) > 1e-12)
    throw std::domain_error("beta0 mismatch between trajectory and zero set");
  if (!(y1 > y0) || points < 2) throw std::domain_error("comparison window needs y1 > y0 and at least 2 points");
  const double ylo = std::log(2.0), yhi = std::log(traj.xmax);
  if (y0 < ylo - 1e-12 || y1 > yhi + 1e-12) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "window [%.6g, %.6g] exceeds trajectory range [%.6g, %.6g]", y0, y1, ylo, yhi);
    throw std::domain_error(buf);
  }
  y0 = std::max(y0, ylo);
  y1 = std::min(y1, yhi);
  const Normalizer norm(traj);
  const TrigPolynomial g(zs, mean, T);
  std::vector<double> e(points), gv(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double y = y0 + (y1 - y0) * static_cast<double>(i) / (points - 1.0);
    e[i] = norm.at_log(y);
    gv[i] = g.at_log(y);
  }
  Comparison c = compare_series(e, gv);
  c.y0 = y0;
  c.y1 = y1;
  return c;
}

}  // namespace primerace
