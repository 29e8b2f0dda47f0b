#include "primerace/race.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "primerace/parallel.hpp"
#include "primerace/primes.hpp"

namespace primerace {

double RaceSpec::li_coefficient() const {
  if (li_coefficient_override) return *li_coefficient_override;
  double c = 0.0;
  for (const auto& t : terms) c += t.weight * t.source.pole_order_s1();
  return c;
}

std::string RaceSpec::label() const {
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out += "+";
    if (t.weight != 1.0) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g*", t.weight);
      out += buf;
    }
    out += t.source.label();
  }
  return out.empty() ? "empty" : out;
}

double RaceSpec::contribution(std::uint64_t p) const {
  double v = 0.0;
  for (const auto& t : terms) v += t.weight * t.source(p);
  return v;
}

double RaceTrajectory::value(double x) const {
  if (breakpoints.empty() || x < static_cast<double>(breakpoints.front().p)) return 0.0;
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x,
                             [](double v, const Breakpoint& b) { return v < static_cast<double>(b.p); });
  return std::prev(it)->cumulative;
}

RaceTrajectory accumulate(const RaceSpec& spec, double xmax, const AccumulateOptions& opts) {
  if (!(xmax >= 2.0)) throw std::domain_error("accumulate: xmax must be >= 2");
  const auto limit = static_cast<std::uint64_t>(std::floor(xmax)) + 1;  // primes p <= xmax
  const std::vector<std::uint64_t> primes = sieve_primes(limit);

  std::vector<double> contrib(primes.size());
  const std::size_t chunk = std::max<std::uint64_t>(1, opts.chunk);
  const std::size_t items = (primes.size() + chunk - 1) / chunk;
  parallel_for(items, opts.workers, [&](std::size_t i) {
    const std::size_t lo = i * chunk, hi = std::min(primes.size(), lo + chunk);
    for (std::size_t k = lo; k < hi; ++k) contrib[k] = spec.contribution(primes[k]);
  });

  RaceTrajectory traj;
  traj.family = spec.label();
  traj.beta0 = spec.beta0;
  traj.li_coefficient = spec.li_coefficient();
  traj.xmax = xmax;
  CompensatedSum sum;
  traj.breakpoints.push_back({2, 0.0});
  for (std::size_t k = 0; k < primes.size(); ++k) {
    if (contrib[k] == 0.0) continue;
    sum.add(contrib[k]);
    if (primes[k] == 2)
      traj.breakpoints.front().cumulative = sum.value();
    else
      traj.breakpoints.push_back({primes[k], sum.value()});
  }
  return traj;
}

namespace {

std::vector<double> breakpoint_abscissae(const RaceTrajectory& traj) {
  std::vector<double> xs;
  xs.reserve(traj.breakpoints.size() + 1);
  for (const auto& b : traj.breakpoints) xs.push_back(static_cast<double>(b.p));
  xs.push_back(traj.xmax);
  return xs;
}

}  // namespace

Normalizer::Normalizer(const RaceTrajectory& traj) : traj_(&traj) {
  if (traj.li_coefficient != 0.0) {
    const auto xs = breakpoint_abscissae(traj);
    li_ = LiTable(xs);
  }
}

double Normalizer::race_value(double x) const {
  if (!(x >= 2.0) || x > traj_->xmax * (1 + 1e-15))
    throw std::domain_error("normalize: x outside [2, xmax]");
  double v = traj_->value(x);
  if (traj_->li_coefficient != 0.0) v += traj_->li_coefficient * li_(x);
  return v;
}

double Normalizer::operator()(double x) const {
  const double r = race_value(x);
  return std::log(x) / std::pow(x, traj_->beta0) * r;
}

double Normalizer::at_log(double y) const {
  const double x = std::exp(y);
  const double r = race_value(std::clamp(x, 2.0, traj_->xmax));
  return y * std::exp(-traj_->beta0 * y) * r;
}

double normalize(const RaceTrajectory& traj, double x) { return Normalizer(traj)(x); }

namespace {

// Walks the segments [x_k, x_{k+1}) of the race value R = S + c li clipped to
// the window, reporting the y-measure where R >= 0 (want_nonneg) or R < 0.
double signed_measure(const RaceTrajectory& traj, double y0, double Y, bool use_normalized,
                      bool want_nonneg) {
  if (!(Y > y0)) throw std::domain_error("log density: empty window");
  const double ymin = std::log(2.0), ymax = std::log(traj.xmax);
  if (y0 < ymin - 1e-12 || Y > ymax + 1e-12)
    throw std::domain_error("log density: window outside trajectory");
  const bool with_li = use_normalized && traj.li_coefficient != 0.0;
  const double c = traj.li_coefficient;
  std::optional<Normalizer> norm;
  if (with_li) norm.emplace(traj);

  double measure = 0.0;
  const auto& bps = traj.breakpoints;
  for (std::size_t k = 0; k < bps.size(); ++k) {
    const double xa = static_cast<double>(bps[k].p);
    const double xb = k + 1 < bps.size() ? static_cast<double>(bps[k + 1].p) : traj.xmax;
    double ya = std::log(xa), yb = std::log(xb);
    if (yb <= y0 || ya >= Y) continue;
    ya = std::max(ya, y0);
    yb = std::min(yb, Y);
    const double S = bps[k].cumulative;
    if (!with_li) {
      if ((S >= 0.0) == want_nonneg) measure += yb - ya;
      continue;
    }
    const LiTable& li = norm->li_table();
    const double xa_c = std::exp(ya), xb_c = std::min(std::exp(yb), traj.xmax);
    const double ra = S + c * li(std::max(xa_c, 2.0));
    const double rb = S + c * li(xb_c);
    if ((ra >= 0.0) == (rb >= 0.0)) {
      if ((ra >= 0.0) == want_nonneg) measure += yb - ya;
      continue;
    }
    // R is monotone on the segment; bisect in y for the sign change.
    double lo = ya, hi = yb;
    for (int it = 0; it < 80 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double rm = S + c * li(std::min(std::exp(mid), traj.xmax));
      if ((rm >= 0.0) == (ra >= 0.0))
        lo = mid;
      else
        hi = mid;
    }
    const double ycross = 0.5 * (lo + hi);
    const bool first_nonneg = ra >= 0.0;
    measure += (first_nonneg == want_nonneg) ? ycross - ya : yb - ycross;
  }
  return measure / (Y - y0);
}

}  // namespace

double log_density_nonneg(const RaceTrajectory& traj, double y0, double Y, bool use_normalized) {
  return signed_measure(traj, y0, Y, use_normalized, true);
}

double log_density_strictneg(const RaceTrajectory& traj, double y0, double Y,
                             bool use_normalized) {
  return signed_measure(traj, y0, Y, use_normalized, false);
}

double log_density_stderr(const RaceTrajectory& traj, double y0, double Y, bool use_normalized,
                          int blocks) {
  if (blocks < 2) return 0.0;
  std::vector<double> d(blocks);
  const double w = (Y - y0) / blocks;
  double mean = 0.0;
  for (int i = 0; i < blocks; ++i) {
    d[i] = log_density_nonneg(traj, y0 + i * w, i + 1 == blocks ? Y : y0 + (i + 1) * w,
                              use_normalized);
    mean += d[i];
  }
  mean /= blocks;
  double ss = 0.0;
  for (double v : d) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (blocks - 1) / blocks);
}

TrajectoryStats trajectory_stats(const RaceTrajectory& traj) {
  if (traj.breakpoints.empty()) throw std::domain_error("trajectory_stats: empty trajectory");
  Normalizer norm(traj);
  TrajectoryStats st;
  bool first = true;
  bool prev_nonneg = true;
  for (const auto& b : traj.breakpoints) {
    const double x = static_cast<double>(b.p);
    if (x > traj.xmax) break;
    const double r = norm.race_value(x);
    const double e = std::log(x) / std::pow(x, traj.beta0) * r;
    if (first) {
      st.running_min = st.running_max = r;
      st.normalized_min = st.normalized_max = e;
      prev_nonneg = r >= 0.0;
      first = false;
      continue;
    }
    st.running_min = std::min(st.running_min, r);
    st.running_max = std::max(st.running_max, r);
    st.normalized_min = std::min(st.normalized_min, e);
    st.normalized_max = std::max(st.normalized_max, e);
    if ((r >= 0.0) != prev_nonneg) {
      ++st.sign_changes;
      prev_nonneg = r >= 0.0;
    }
  }

  // Time average of E(e^y) over [log 2, log xmax]: the S part in closed form,
  // the li part by two-panel Simpson per segment.
  const double beta = traj.beta0;
  auto prim = [beta](double y) { return -std::exp(-beta * y) * (beta * y + 1.0) / (beta * beta); };
  const double y0 = std::log(2.0), y1 = std::log(traj.xmax);
  CompensatedSum acc;
  const auto& bps = traj.breakpoints;
  for (std::size_t k = 0; k < bps.size(); ++k) {
    const double ya = std::log(static_cast<double>(bps[k].p));
    const double yb = k + 1 < bps.size() ? std::log(static_cast<double>(bps[k + 1].p)) : y1;
    if (yb <= ya) continue;
    acc.add(bps[k].cumulative * (prim(yb) - prim(ya)));
    if (traj.li_coefficient != 0.0) {
      const LiTable& li = norm.li_table();
      auto g = [&](double y) {
        return y * std::exp(-beta * y) * li(std::clamp(std::exp(y), 2.0, traj.xmax));
      };
      const double ym = 0.5 * (ya + yb);
      const double h = yb - ya;
      const double q1 = 0.5 * (ya + ym), q3 = 0.5 * (ym + yb);
      acc.add(traj.li_coefficient * h / 12.0 *
              (g(ya) + 4.0 * g(q1) + 2.0 * g(ym) + 4.0 * g(q3) + g(yb)));
    }
  }
  st.log_mean = y1 > y0 ? acc.value() / (y1 - y0) : 0.0;
  return st;
}

std::string format_trajectory(const RaceTrajectory& traj) {
  std::ostringstream os;
  char buf[64];
  os << "# family=" << traj.family << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", traj.beta0);
  os << "# beta0=" << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", traj.li_coefficient);
  os << "# li_coefficient=" << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", traj.xmax);
  os << "# xmax=" << buf << '\n';
  for (const auto& m : traj.metadata) os << "# " << m << '\n';
  os << "p,S\n";
  for (const auto& b : traj.breakpoints) {
    std::snprintf(buf, sizeof buf, "%llu,%.12g\n", static_cast<unsigned long long>(b.p),
                  b.cumulative);
    os << buf;
  }
  return os.str();
}

void export_trajectory(const RaceTrajectory& traj, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << format_trajectory(traj);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

RaceTrajectory import_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  RaceTrajectory traj;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body[0] == ' ') body.erase(0, 1);
      const auto eq = body.find('=');
      const std::string key = eq == std::string::npos ? body : body.substr(0, eq);
      const std::string val = eq == std::string::npos ? "" : body.substr(eq + 1);
      if (key == "family")
        traj.family = val;
      else if (key == "beta0")
        traj.beta0 = std::stod(val);
      else if (key == "li_coefficient")
        traj.li_coefficient = std::stod(val);
      else if (key == "xmax")
        traj.xmax = std::stod(val);
      else
        traj.metadata.push_back(body);
      continue;
    }
    if (line == "p,S") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected p,S");
    try {
      Breakpoint b{std::stoull(line.substr(0, comma)), std::stod(line.substr(comma + 1))};
      traj.breakpoints.push_back(b);
    } catch (const std::exception&) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": malformed row");
    }
  }
  return traj;
}

}  // namespace primerace
