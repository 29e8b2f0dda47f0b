#include "primerace/zeros.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "primerace/digest.hpp"

namespace primerace {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_real(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size() && std::isfinite(out);
}

bool parse_int(const std::string& s, int& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size();
}

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::size_t decimals(const std::string& t) {
  const auto dot = t.find('.');
  if (dot == std::string::npos || t.find_first_of("eE") != std::string::npos) return 0;
  return t.size() - dot - 1;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::string format_ordinate(double gamma) {
  char buf[128];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, gamma, std::chars_format::fixed);
  std::string s(buf, ptr);
  if (s.find('.') == std::string::npos) s += '.';
  while (decimals(s) < 9) s += '0';
  return s;
}

std::size_t ZeroSet::add_component(const ZeroComponent& c) {
  for (std::size_t i = 0; i < components.size(); ++i)
    if (components[i].label == c.label) return i;
  components.push_back(c);
  return components.size() - 1;
}

void ZeroSet::add_zero(double gamma, std::size_t component, int multiplicity) {
  entries.push_back({gamma, component, multiplicity, {}});
}

void ZeroSet::normalize() {
  if (!(beta0 > 0.0 && beta0 <= 1.0)) throw std::invalid_argument("beta0 must lie in (0, 1]");
  for (const auto& e : entries) {
    if (!(e.gamma > 0.0) || !std::isfinite(e.gamma)) throw std::invalid_argument("ordinates must be positive");
    if (e.multiplicity < 1) throw std::invalid_argument("multiplicities must be >= 1");
    if (e.component >= components.size()) throw std::invalid_argument("entry refers to an unknown component");
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const ZeroEntry& a, const ZeroEntry& b) { return a.gamma < b.gamma; });
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = i + 1; j < entries.size() && entries[j].gamma - entries[i].gamma <= kOrdinateTolerance; ++j)
      if (entries[j].component == entries[i].component)
        throw std::invalid_argument("duplicate ordinate " + format_ordinate(entries[i].gamma) + " for component " +
                                    components[entries[i].component].label);
}

std::vector<Ordinate> ZeroSet::ordinates(double T) const {
  std::vector<Ordinate> out;
  for (std::size_t i = 0; i < entries.size() && entries[i].gamma <= T;) {
    const double g = entries[i].gamma;
    double m = 0.0;
    std::size_t j = i;
    for (; j < entries.size() && entries[j].gamma - g <= kOrdinateTolerance; ++j)
      m += components[entries[j].component].weight * entries[j].multiplicity;
    out.push_back({g, m});
    i = j;
  }
  return out;
}

ZeroSet parse_zero_text(const std::string& text, const std::string& name, bool plain,
                        const ZeroComponent& plain_component) {
  ZeroSet zs;
  if (plain) zs.components.push_back(plain_component);
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  bool seen_data = false;
  double last = 0.0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = trim(line.substr(1));
      if (body.rfind("beta0=", 0) == 0) {
        if (!parse_real(body.substr(6), zs.beta0) || !(zs.beta0 > 0.0 && zs.beta0 <= 1.0))
          throw ParseError(name, lineno, "bad beta0");
      } else if (body.rfind("component=", 0) == 0 && !plain) {
        ZeroComponent c;
        bool have_weight = false;
        std::istringstream fields(body);
        std::string tok;
        while (fields >> tok) {
          const auto eq = tok.find('=');
          if (eq == std::string::npos) throw ParseError(name, lineno, "expected key=value, got '" + tok + "'");
          const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
          bool ok = true;
          if (key == "component") {
            c.label = val;
            ok = !val.empty() && val.find(',') == std::string::npos;
          } else if (key == "weight") {
            ok = parse_real(val, c.weight);
            have_weight = true;
          } else if (key == "central_order") {
            ok = parse_int(val, c.central_order);
          } else if (key == "second_moment_pole") {
            ok = parse_int(val, c.second_moment_pole);
          } else {
            ok = false;
          }
          if (!ok) throw ParseError(name, lineno, "bad component field '" + tok + "'");
        }
        if (!have_weight) throw ParseError(name, lineno, "component without weight");
        for (const auto& other : zs.components)
          if (other.label == c.label) throw ParseError(name, lineno, "duplicate component " + c.label);
        if (seen_data) throw ParseError(name, lineno, "component declared after data rows");
        zs.components.push_back(c);
      } else {
        zs.notes.push_back(line);
      }
      continue;
    }
    if (!plain && !seen_data && line == "gamma,component,multiplicity") continue;

    ZeroEntry e;
    std::string gtext;
    if (plain) {
      gtext = line;
    } else {
      const auto f = split(line, ',');
      if (f.size() != 3) throw ParseError(name, lineno, "expected gamma,component,multiplicity");
      gtext = trim(f[0]);
      const std::string label = trim(f[1]);
      auto it = std::find_if(zs.components.begin(), zs.components.end(),
                             [&](const ZeroComponent& c) { return c.label == label; });
      if (it == zs.components.end()) throw ParseError(name, lineno, "undeclared component '" + label + "'");
      e.component = static_cast<std::size_t>(it - zs.components.begin());
      if (!parse_int(f[2], e.multiplicity) || e.multiplicity < 1)
        throw ParseError(name, lineno, "multiplicity must be a positive integer");
    }
    if (!parse_real(gtext, e.gamma)) throw ParseError(name, lineno, "bad ordinate '" + gtext + "'");
    if (!(e.gamma > 0.0)) throw ParseError(name, lineno, "ordinate must be positive");
    if (seen_data && e.gamma < last) throw ParseError(name, lineno, "ordinates not sorted");
    for (auto k = zs.entries.rbegin(); k != zs.entries.rend() && e.gamma - k->gamma <= kOrdinateTolerance; ++k)
      if (k->component == e.component) throw ParseError(name, lineno, "duplicate ordinate");
    e.text = gtext;
    last = e.gamma;
    seen_data = true;
    zs.entries.push_back(std::move(e));
  }
  if (!plain && !zs.entries.empty() && zs.components.empty())
    throw ParseError(name, lineno, "no component declared");
  return zs;
}

ZeroSet load_zero_file(const std::string& path, bool plain, const ZeroComponent& plain_component) {
  return parse_zero_text(read_file(path), path, plain, plain_component);
}

std::string format_zero_set(const ZeroSet& zs) {
  std::string out = "# beta0=" + shortest(zs.beta0) + "\n";
  for (const auto& c : zs.components)
    out += "# component=" + c.label + " weight=" + shortest(c.weight) +
           " central_order=" + std::to_string(c.central_order) +
           " second_moment_pole=" + std::to_string(c.second_moment_pole) + "\n";
  for (const auto& n : zs.notes) out += n + "\n";
  out += "gamma,component,multiplicity\n";
  for (const auto& e : zs.entries) {
    out += decimals(e.text) >= 9 ? e.text : format_ordinate(e.gamma);
    out += ',';
    out += zs.components.at(e.component).label;
    out += ',';
    out += std::to_string(e.multiplicity);
    out += '\n';
  }
  return out;
}

void save_zero_file(const ZeroSet& zs, const std::string& path) { write_file(path, format_zero_set(zs)); }

std::string format_plain_ordinates(const ZeroSet& zs) {
  std::string out;
  for (const auto& e : zs.entries) out += (e.text.empty() ? format_ordinate(e.gamma) : e.text) + "\n";
  return out;
}

std::complex<double> big_m(const ZeroSet& zs, double gamma) {
  double m = 0.0;
  for (const auto& e : zs.entries)
    if (std::abs(e.gamma - gamma) <= kOrdinateTolerance) m += zs.components[e.component].weight * e.multiplicity;
  return {m, 0.0};
}

double mean_mS(const ZeroSet& zs) {
  const bool rh = zs.beta0 == 0.5;
  double m = 0.0;
  for (const auto& c : zs.components)
    m += c.weight * ((rh ? c.second_moment_pole : 0) - c.central_order / zs.beta0);
  return m;
}

double variance(const ZeroSet& zs, double T) {
  double v = 0.0;
  const double b2 = zs.beta0 * zs.beta0;
  for (const auto& o : zs.ordinates(T)) v += o.big_m * o.big_m / (b2 + o.gamma * o.gamma);
  return 2.0 * v;
}

TrigPolynomial::TrigPolynomial(const ZeroSet& zs, double mean, double T) : mean_(mean) {
  const double b = zs.beta0;
  for (const auto& o : zs.ordinates(T)) {
    if (o.big_m == 0.0) continue;
    const double den = b * b + o.gamma * o.gamma;
    // M / (beta0 + i gamma)
    const double re = o.big_m * b / den, im = -o.big_m * o.gamma / den;
    gamma_.push_back(o.gamma);
    cre_.push_back(2.0 * re);
    cim_.push_back(2.0 * im);
    amp_.push_back(2.0 * std::hypot(re, im));
    phase_.push_back(std::atan2(im, re));
  }
}

double TrigPolynomial::at_log(double y) const {
  double s = 0.0;
  for (std::size_t i = 0; i < gamma_.size(); ++i) {
    const double ph = gamma_[i] * y;
    s += cre_[i] * std::cos(ph) - cim_[i] * std::sin(ph);
  }
  return mean_ - s;
}

double TrigPolynomial::operator()(double x) const {
  if (!(x >= 2.0)) throw std::domain_error("G is evaluated for x >= 2");
  return at_log(std::log(x));
}

double g_trig(const ZeroSet& zs, double mean, double T, double x) { return TrigPolynomial(zs, mean, T)(x); }

double g_trig_at_log(const ZeroSet& zs, double mean, double T, double y) {
  return TrigPolynomial(zs, mean, T).at_log(y);
}

}  // namespace primerace
