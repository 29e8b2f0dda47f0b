// primerace: prime races, L-function zeros and limiting distributions.
//
// Every subcommand writes a machine-readable JSON report (or the requested
// data file) to stdout; progress and warnings go to stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "primerace/coefficients.hpp"
#include "primerace/digest.hpp"
#include "primerace/distribution.hpp"
#include "primerace/elliptic.hpp"
#include "primerace/lfunction.hpp"
#include "primerace/modarith.hpp"
#include "primerace/parallel.hpp"
#include "primerace/race.hpp"
#include "primerace/rng.hpp"
#include "primerace/zeros.hpp"

namespace pr = primerace;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void progress(const std::string& msg) { std::cerr << "[primerace] " << msg << std::endl; }

// Emits `text` to `path`, or to stdout when path is empty or "-".
void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("write to stdout failed");
  } else {
    pr::write_file(path, text);
    progress("wrote " + path);
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json chebyshev_json(const std::optional<pr::ChebyshevBound>& c) {
  if (!c) return nullptr;
  return json{{"side", c->side == pr::ChebyshevBound::Side::upper ? "upper" : "lower"}, {"bound", c->bound}};
}

json histogram_json(const pr::Histogram& h) {
  return json{{"lo", h.lo},
              {"hi", h.hi},
              {"bins", pr::Histogram::kBins},
              {"edges", h.edges()},
              {"counts", h.counts},
              {"underflow", h.underflow},
              {"overflow", h.overflow}};
}

// ---------------------------------------------------------------- race

struct RaceOptions {
  std::string family;
  std::uint64_t q = 4, a = 3, b = 1;
  int D = 2;
  bool factor2 = false;
  bool phi_q_scaling = false;
  std::string curve = "E1", curve1 = "E1", curve2 = "E2";
  double xmax = 1e6;
  double beta0 = 0.5;
  double y0 = std::log(2.0);
  std::string out;
};

pr::RaceSpec build_spec(const RaceOptions& o, json& cfg) {
  pr::RaceSpec spec;
  spec.beta0 = o.beta0;
  cfg["family"] = o.family;
  if (o.phi_q_scaling && o.family != "dirichlet") throw UsageError("--phi-q-scaling applies to --family dirichlet only");
  if (o.family == "zeta") {
    spec.terms.push_back({pr::CoefficientSource::zeta(), 1.0});
  } else if (o.family == "dirichlet") {
    const double w = o.phi_q_scaling ? static_cast<double>(pr::totient(o.q)) : 1.0;
    spec.terms.push_back({pr::CoefficientSource::dirichlet_pair(o.q, o.a, o.b), w});
    cfg["q"] = o.q;
    cfg["a"] = o.a;
    cfg["b"] = o.b;
    cfg["phi_q_scaling"] = o.phi_q_scaling;
  } else if (o.family == "qr") {
    spec.terms.push_back({pr::CoefficientSource::qr_race(o.q), 1.0});
    cfg["q"] = o.q;
  } else if (o.family == "sum2sq") {
    spec.terms.push_back({pr::CoefficientSource::sum_two_squares(o.D, o.factor2), 1.0});
    cfg["D"] = o.D;
    cfg["factor2"] = o.factor2;
  } else if (o.family == "gauss") {
    spec.terms.push_back({pr::CoefficientSource::gauss_angle(), 1.0});
  } else if (o.family == "ectrace") {
    const auto c = pr::EllipticCurve::parse(o.curve);
    spec.terms.push_back({pr::CoefficientSource::ec_trace(c), 1.0});
    cfg["curve"] = c.coefficient_string();
  } else if (o.family == "ecpair") {
    const auto c1 = pr::EllipticCurve::parse(o.curve1);
    const auto c2 = pr::EllipticCurve::parse(o.curve2);
    spec.terms.push_back({pr::CoefficientSource::ec_pair(c1, c2), 1.0});
    cfg["curve1"] = c1.coefficient_string();
    cfg["curve2"] = c2.coefficient_string();
  } else {
    throw UsageError("unknown family '" + o.family + "'");
  }
  cfg["xmax"] = o.xmax;
  cfg["beta0"] = o.beta0;
  cfg["y0"] = o.y0;
  return spec;
}

int cmd_race(const RaceOptions& o, unsigned workers) {
  if (!(o.xmax >= 2.0) || o.xmax > 1e12) throw UsageError("--xmax must lie in [2, 1e12]");
  if (!(o.beta0 >= 0.5 && o.beta0 < 1.0)) throw UsageError("--beta0 must lie in [1/2, 1)");
  json cfg;
  const pr::RaceSpec spec = build_spec(o, cfg);
  const double Y = std::log(o.xmax);
  if (!(o.y0 >= std::log(2.0) - 1e-15 && o.y0 < Y)) throw UsageError("--y0 must lie in [log 2, log xmax)");

  progress("accumulating " + spec.label() + " up to " + std::to_string(static_cast<long long>(o.xmax)));
  const auto t0 = std::chrono::steady_clock::now();
  pr::RaceTrajectory traj = pr::accumulate(spec, o.xmax, {workers});
  for (const auto& [k, v] : cfg.items()) traj.metadata.push_back("config." + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump()));
  progress("accumulated " + std::to_string(traj.breakpoints.size()) + " breakpoints in " +
           std::to_string(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()) + " s");

  const double delta = pr::log_density_nonneg(traj, o.y0, Y);
  const double err = pr::log_density_stderr(traj, o.y0, Y);
  const auto st = pr::trajectory_stats(traj);

  json report;
  report["command"] = "race";
  report["config"] = cfg;
  report["label"] = spec.label();
  report["li_coefficient"] = traj.li_coefficient;
  report["breakpoints"] = traj.breakpoints.size();
  report["S_xmax"] = traj.breakpoints.back().cumulative;
  report["window"] = {{"y0", o.y0}, {"Y", Y}};
  report["log_density_nonneg"] = delta;
  report["log_density_stderr"] = err;
  report["sign_changes"] = st.sign_changes;
  report["running_min"] = st.running_min;
  report["running_max"] = st.running_max;
  report["normalized_min"] = st.normalized_min;
  report["normalized_max"] = st.normalized_max;
  report["log_mean"] = st.log_mean;
  if (!o.out.empty()) {
    const std::string csv = pr::format_trajectory(traj);
    pr::write_file(o.out, csv);
    progress("wrote " + o.out);
    report["output"] = {{"path", o.out}, {"sha256", pr::sha256_hex(csv)}};
  }
  emit(dump(report), "");
  return 0;
}

// ---------------------------------------------------------------- zeros

struct ZerosOptions {
  std::string lfunc = "zeta";
  double tmin = 0.0;
  double tmax = 100.0;
  int em_terms = 0;
  double precision = 1e-12;
  double step = 0.05;
  std::optional<double> weight;
  int central_order = 0;
  std::optional<int> second_moment_pole;
  std::string out;
};

int cmd_zeros(const ZerosOptions& o, unsigned workers) {
  if (!(o.tmax > 0.0) || !std::isfinite(o.tmax)) throw UsageError("--tmax must be positive");
  if (!(o.tmin >= 0.0) || o.tmin > o.tmax) throw UsageError("--tmin must lie in [0, tmax]");
  if (!(o.step > 0.0 && o.step <= 1.0)) throw UsageError("--step must lie in (0, 1]");
  if (!(o.precision > 0.0)) throw UsageError("--precision must be positive");
  const pr::LFunction f = pr::LFunction::parse(o.lfunc);
  if (f.modulus() > 100) throw UsageError("moduli above 100 are not supported");

  const pr::CriticalLineEvaluator ev = o.em_terms > 0 ? pr::CriticalLineEvaluator(f, o.em_terms, o.precision)
                                                      : pr::CriticalLineEvaluator::for_height(f, o.tmax, o.precision);
  if (ev.t_max() < o.tmax) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "tmax=%g exceeds the validated range %g of em_terms=%d", o.tmax, ev.t_max(),
                  ev.em_terms());
    throw std::out_of_range(buf);
  }
  progress("scanning " + f.label() + " with em_terms=" + std::to_string(ev.em_terms()));
  pr::ZeroScanOptions so;
  so.step = o.step;
  so.workers = workers;
  const pr::ZeroScan scan = pr::find_zeros(ev, o.tmin, o.tmax, so);
  progress(scan.diagnostic);
  if (!scan.count_consistent) std::cerr << "warning: zero count inconsistent with the main term: " << scan.diagnostic << "\n";

  pr::ZeroSet zs;
  zs.beta0 = 0.5;
  const std::size_t c = zs.add_component({f.label(), o.weight.value_or(1.0), o.central_order,
                                          o.second_moment_pole.value_or(-1)});
  for (double g : scan.gammas) zs.add_zero(g, c);
  zs.normalize();
  auto num = [](double v) { return json(v).dump(); };
  zs.notes.push_back("# lfunc=" + o.lfunc);
  zs.notes.push_back("# tmin=" + num(o.tmin));
  zs.notes.push_back("# tmax=" + num(o.tmax));
  zs.notes.push_back("# step=" + num(o.step));
  zs.notes.push_back("# precision=" + num(o.precision));
  zs.notes.push_back("# em_terms=" + std::to_string(ev.em_terms()));
  zs.notes.push_back("# count=" + std::to_string(scan.gammas.size()));

  const std::string text = pr::format_zero_set(zs);
  if (o.out.empty()) {
    emit(text, "");
  } else {
    pr::write_file(o.out, text);
    progress("wrote " + o.out);
    json report;
    report["command"] = "zeros";
    report["config"] = {{"lfunc", o.lfunc}, {"tmin", o.tmin}, {"tmax", o.tmax}, {"step", o.step},
                        {"precision", o.precision}, {"em_terms", ev.em_terms()}};
    report["count"] = scan.gammas.size();
    report["expected_count"] = scan.expected_count;
    report["count_consistent"] = scan.count_consistent;
    report["output"] = {{"path", o.out}, {"sha256", pr::sha256_hex(text)}};
    emit(dump(report), "");
  }
  return 0;
}

// ---------------------------------------------------------------- shared zero-file input

struct ZeroInput {
  std::string path;
  bool plain = false;
  std::string digest;
  std::optional<double> T;
  std::optional<double> mean;
};

struct LoadedZeros {
  pr::ZeroSet zs;
  std::string sha256;
  double T;
  double mean;
};

LoadedZeros load_zeros(const ZeroInput& in) {
  if (in.path.empty()) throw UsageError("--zeros is required");
  const std::string bytes = pr::read_file(in.path);
  LoadedZeros out;
  out.sha256 = pr::sha256_hex(bytes);
  if (!in.digest.empty() && in.digest != out.sha256)
    throw std::runtime_error("digest mismatch for " + in.path + ": declared " + in.digest + ", loaded " + out.sha256);
  out.zs = pr::parse_zero_text(bytes, in.path, in.plain);
  if (in.T && !(*in.T > 0.0)) throw UsageError("--T must be positive");
  out.T = in.T.value_or(std::numeric_limits<double>::infinity());
  out.mean = in.mean.value_or(pr::mean_mS(out.zs));
  return out;
}

json zero_input_json(const ZeroInput& in, const LoadedZeros& z) {
  json j{{"zeros", in.path}, {"plain", in.plain}, {"zeros_sha256", z.sha256}, {"beta0", z.zs.beta0}};
  if (std::isfinite(z.T))
    j["T"] = z.T;
  else
    j["T"] = "all";
  j["mean"] = z.mean;
  j["mean_source"] = in.mean ? "override" : "zero file";
  return j;
}

// ---------------------------------------------------------------- dist

struct DistOptions {
  ZeroInput in;
  std::string method = "montecarlo";
  std::string sampler = "li";
  std::uint64_t n = 1000000;
  std::uint64_t seed = 1;
  double ymax = 1e4;
  std::size_t t_points = 4001;
  bool allow_fallback = false;
  std::string out;
};

int cmd_dist(const DistOptions& o, unsigned workers) {
  const auto method = pr::parse_delta_method(o.method);
  if (o.sampler != "li" && o.sampler != "time_average") throw UsageError("--sampler must be li or time_average");
  if (o.n < 1) throw UsageError("--n must be >= 1");
  if (o.sampler == "time_average" && !(o.ymax > 2.0)) throw UsageError("--ymax must exceed 2");
  const LoadedZeros z = load_zeros(o.in);
  const pr::SamplingOptions so{workers};

  json cfg = zero_input_json(o.in, z);
  cfg["method"] = o.method;
  cfg["sampler"] = o.sampler;
  cfg["n"] = o.n;
  cfg["seed"] = o.seed;
  if (o.sampler == "time_average") cfg["ymax"] = o.ymax;
  if (method == pr::DeltaMethod::fourier_inversion) cfg["t_points"] = o.t_points;
  cfg["rng"] = pr::CounterRng::kName;

  progress("sampling " + std::to_string(o.n) + " values over " + std::to_string(z.zs.ordinates(z.T).size()) +
           " ordinates");
  pr::DistributionSummary s = o.sampler == "li" ? pr::sample_li(z.zs, z.mean, z.T, o.n, o.seed, so)
                                                : pr::sample_time_average(z.zs, z.mean, z.T, o.ymax, o.n, o.seed, so);
  json inversion = nullptr;
  if (method == pr::DeltaMethod::fourier_inversion) {
    pr::DeltaParams dp;
    dp.n_samples = o.n;
    dp.seed = o.seed;
    dp.workers = workers;
    dp.t_points = o.t_points;
    dp.allow_fallback = o.allow_fallback;
    const pr::DeltaResult d = pr::delta_estimate(z.zs, z.mean, z.T, method, dp);
    s.delta = d.value;
    s.delta_stderr = d.stderr_;
    s.delta_method = d.method;
    inversion = {{"diagnostic", d.diagnostic}};
  }

  json doc;
  doc["command"] = "dist";
  doc["config"] = cfg;
  doc["modeling"] = o.sampler == "li" ? "linear independence of ordinates (full-torus sampling)"
                                      : "time average, no independence assumption";
  json sum;
  sum["sampler"] = s.sampler;
  sum["n_samples"] = s.n_samples;
  sum["mean"] = s.mean;
  sum["mean_stderr"] = std::sqrt(s.variance / static_cast<double>(s.n_samples));
  sum["variance"] = s.variance;
  sum["skewness"] = s.skewness;
  sum["model_mean"] = s.model_mean;
  sum["model_variance"] = s.model_variance;
  sum["ordinates"] = s.ordinates;
  sum["delta_estimate"] = s.delta;
  sum["delta_stderr"] = s.delta_stderr;
  sum["delta_method"] = pr::to_string(s.delta_method);
  if (!inversion.is_null()) sum["inversion"] = inversion;
  sum["chebyshev_bound"] = chebyshev_json(s.chebyshev);
  sum["histogram"] = histogram_json(s.histogram);
  doc["summary"] = sum;
  emit(dump(doc), o.out);
  return 0;
}

// ---------------------------------------------------------------- compare

struct CompareOptions {
  std::string trajectory;
  ZeroInput in;
  std::vector<double> Ts;
  std::optional<double> y0, y1;
  std::size_t points = 20000;
  std::string out;
};

int cmd_compare(const CompareOptions& o) {
  if (o.trajectory.empty()) throw UsageError("--trajectory is required");
  if (o.points < 2) throw UsageError("--points must be >= 2");
  const std::string traj_bytes = pr::read_file(o.trajectory);
  const pr::RaceTrajectory traj = pr::import_trajectory(o.trajectory);
  ZeroInput in = o.in;
  in.T.reset();
  const LoadedZeros z = load_zeros(in);
  std::vector<double> Ts = o.Ts;
  if (Ts.empty()) Ts.push_back(100.0);
  const double y0 = o.y0.value_or(std::log(1e4));
  const double y1 = o.y1.value_or(std::log(traj.xmax));

  json cfg = zero_input_json(in, z);
  cfg.erase("T");
  cfg["trajectory"] = o.trajectory;
  cfg["trajectory_sha256"] = pr::sha256_hex(traj_bytes);
  cfg["y0"] = y0;
  cfg["y1"] = y1;
  cfg["points"] = o.points;
  json results = json::array();
  for (double T : Ts) {
    if (!(T > 0.0)) throw UsageError("--T must be positive");
    const pr::Comparison c = pr::compare_empirical(traj, z.zs, z.mean, T, y0, y1, o.points);
    json r{{"T", T}, {"ordinates", z.zs.ordinates(T).size()}, {"rms_diff", c.rms}};
    r["correlation"] = c.correlation_defined ? json(c.correlation) : json(nullptr);
    r["correlation_defined"] = c.correlation_defined;
    results.push_back(r);
  }
  json doc;
  doc["command"] = "compare";
  doc["config"] = cfg;
  doc["results"] = results;
  emit(dump(doc), o.out);
  return 0;
}

// ---------------------------------------------------------------- density

struct DensityOptions {
  ZeroInput in;
  std::size_t t_points = 4001;
  std::string out;
  std::string profile_out;
  std::string report_out;
};

int cmd_density(const DensityOptions& o, unsigned workers) {
  const LoadedZeros z = load_zeros(o.in);
  if (o.t_points < 3) throw UsageError("--t-points must be >= 3");
  pr::DeltaParams dp;
  dp.workers = workers;
  dp.t_points = o.t_points;
  const pr::InversionRun run = pr::invert(z.zs, z.mean, z.T, dp);

  json cfg = zero_input_json(o.in, z);
  cfg["t_points"] = o.t_points;
  const std::string hdr = "# zeros_sha256=" + z.sha256 + "\n# mean=" + json(z.mean).dump() +
                          "\n# T=" + (std::isfinite(z.T) ? json(z.T).dump() : std::string("all")) + "\n";
  json doc;
  doc["command"] = "density";
  doc["config"] = cfg;
  doc["convention"] = pr::FourierProfile::kConvention;
  doc["xi_cutoff"] = run.profile.xi.back();
  doc["xi_nodes"] = run.profile.xi.size();
  doc["raw_mass"] = run.density.raw_mass;
  doc["delta_estimate"] = run.delta.value;
  doc["delta_error"] = run.delta.stderr_;
  doc["delta_method"] = "fourier_inversion";
  doc["chebyshev_bound"] = chebyshev_json(pr::chebyshev_bound(z.mean, pr::variance(z.zs, z.T)));
  if (!o.profile_out.empty()) {
    pr::write_file(o.profile_out, hdr + pr::format_fourier_csv(run.profile));
    doc["profile"] = o.profile_out;
  }
  std::string csv = hdr + "t,phi\n";
  char buf[96];
  for (std::size_t i = 0; i < run.density.t.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", run.density.t[i], run.density.phi[i]);
    csv += buf;
  }
  if (!o.out.empty()) {
    pr::write_file(o.out, csv);
    progress("wrote " + o.out);
    doc["density"] = {{"path", o.out}, {"sha256", pr::sha256_hex(csv)}};
    emit(dump(doc), o.report_out);
  } else {
    emit(csv, "");
    if (!o.report_out.empty()) emit(dump(doc), o.report_out);
  }
  return 0;
}

void add_zero_input(CLI::App* cmd, ZeroInput& in, bool with_T = true) {
  cmd->add_option("--zeros", in.path, "Zero file")->required();
  cmd->add_flag("--plain", in.plain, "Zero file is a bare list of zeta ordinates");
  cmd->add_option("--zeros-digest", in.digest, "Expected SHA-256 of the zero file");
  if (with_T) cmd->add_option("--T", in.T, "Truncation height (default: all ordinates)");
  cmd->add_option("--mean", in.mean, "Mean m_S (default: from the component metadata)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prime number races, L-function zeros and limiting logarithmic distributions"};
  app.set_config("--config", "", "TOML/INI file with option values");
  app.require_subcommand(1);
  app.fallthrough();
  unsigned workers = pr::default_workers();
  app.add_option("--workers", workers, "Worker threads (results do not depend on it)")->check(CLI::Range(1u, 1024u));

  RaceOptions race;
  auto* race_cmd = app.add_subcommand("race", "Accumulate a race trajectory and report its statistics");
  race_cmd->add_option("--family", race.family, "zeta|dirichlet|qr|sum2sq|gauss|ectrace|ecpair")->required();
  race_cmd->add_option("--q", race.q, "Modulus");
  race_cmd->add_option("--a", race.a, "Residue counted positively");
  race_cmd->add_option("--b", race.b, "Residue counted negatively");
  race_cmd->add_option("--D", race.D, "D for a^2 + D b^2");
  race_cmd->add_flag("--factor2", race.factor2, "Double the sum2sq coefficients");
  race_cmd->add_flag("--phi-q-scaling", race.phi_q_scaling, "Weight the dirichlet race by phi(q)");
  race_cmd->add_option("--curve", race.curve, "Curve for ectrace (preset or a1,a2,a3,a4,a6)");
  race_cmd->add_option("--curve1", race.curve1, "First curve for ecpair");
  race_cmd->add_option("--curve2", race.curve2, "Second curve for ecpair");
  race_cmd->add_option("--xmax", race.xmax, "Upper limit of the race");
  race_cmd->add_option("--beta0", race.beta0, "Assumed supremum of real parts of zeros");
  race_cmd->add_option("--y0", race.y0, "Start of the log-density window in y = log x");
  race_cmd->add_option("--out", race.out, "Trajectory CSV");

  ZerosOptions zeros;
  auto* zeros_cmd = app.add_subcommand("zeros", "Locate zeros on the critical line and write a zero file");
  zeros_cmd->add_option("--lfunc", zeros.lfunc, "zeta or dirichlet:<q> / dirichlet:<d>");
  zeros_cmd->add_option("--tmin", zeros.tmin, "Lower end of the scan");
  zeros_cmd->add_option("--tmax", zeros.tmax, "Upper end of the scan")->required();
  zeros_cmd->add_option("--em-terms", zeros.em_terms, "Euler-Maclaurin terms (default: smallest valid)");
  zeros_cmd->add_option("--precision", zeros.precision, "Evaluation precision target");
  zeros_cmd->add_option("--step", zeros.step, "Scan step in t");
  zeros_cmd->add_option("--weight", zeros.weight, "Component weight a_f (default 1)");
  zeros_cmd->add_option("--central-order", zeros.central_order, "Order of vanishing at beta0");
  zeros_cmd->add_option("--second-moment-pole", zeros.second_moment_pole,
                        "Order of the second moment L-function at 1 (default -1)");
  zeros_cmd->add_option("--out", zeros.out, "Zero file (default: stdout)");

  DistOptions dist;
  auto* dist_cmd = app.add_subcommand("dist", "Reconstruct the limiting distribution from a zero file");
  add_zero_input(dist_cmd, dist.in);
  dist_cmd->add_option("--method", dist.method, "montecarlo|fourier_inversion (for delta)");
  dist_cmd->add_option("--sampler", dist.sampler, "li|time_average");
  dist_cmd->add_option("--n", dist.n, "Number of samples");
  dist_cmd->add_option("--seed", dist.seed, "RNG seed");
  dist_cmd->add_option("--ymax", dist.ymax, "Upper end of the y window for time_average");
  dist_cmd->add_option("--t-points", dist.t_points, "Density grid size for fourier_inversion");
  dist_cmd->add_flag("--allow-fallback", dist.allow_fallback, "Use Monte Carlo if inversion is refused");
  dist_cmd->add_option("--out", dist.out, "Summary document (default: stdout)");

  CompareOptions cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Compare a normalized trajectory with G_{S,T}");
  cmp_cmd->add_option("--trajectory", cmp.trajectory, "Trajectory CSV")->required();
  add_zero_input(cmp_cmd, cmp.in, false);
  cmp_cmd->add_option("--T", cmp.Ts, "Truncation height(s)");
  cmp_cmd->add_option("--y0", cmp.y0, "Window start in y (default log 1e4)");
  cmp_cmd->add_option("--y1", cmp.y1, "Window end in y (default log xmax)");
  cmp_cmd->add_option("--points", cmp.points, "Number of y samples");
  cmp_cmd->add_option("--out", cmp.out, "Report (default: stdout)");

  DensityOptions dens;
  auto* dens_cmd = app.add_subcommand("density", "Fourier transform and density of the limiting distribution");
  add_zero_input(dens_cmd, dens.in);
  dens_cmd->add_option("--t-points", dens.t_points, "Density grid size");
  dens_cmd->add_option("--out", dens.out, "Density CSV t,phi (default: stdout)");
  dens_cmd->add_option("--profile-out", dens.profile_out, "Fourier profile CSV xi,re,im");
  dens_cmd->add_option("--report", dens.report_out, "Report JSON path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*race_cmd) return cmd_race(race, workers);
    if (*zeros_cmd) return cmd_zeros(zeros, workers);
    if (*dist_cmd) return cmd_dist(dist, workers);
    if (*cmp_cmd) return cmd_compare(cmp);
    if (*dens_cmd) return cmd_density(dens, workers);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
