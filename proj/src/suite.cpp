#include "cdirac/suite.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include <json.hpp>

#include "cdirac/calculus.hpp"
#include "cdirac/clifford.hpp"
#include "cdirac/fields.hpp"
#include "cdirac/functionals.hpp"
#include "cdirac/geometry.hpp"
#include "cdirac/greenkernel.hpp"

namespace cdirac {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// config parsing

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void config_error(int line, const std::string& what) {
  std::ostringstream os;
  os << "config error (line " << line << "): " << what;
  throw std::invalid_argument(os.str());
}

double parse_double(const std::string& v, int line) {
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0' || !std::isfinite(x))
    config_error(line, "expected a number, got '" + v + "'");
  return x;
}

long long parse_int(const std::string& v, int line) {
  char* end = nullptr;
  long long x = std::strtoll(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    config_error(line, "expected an integer, got '" + v + "'");
  return x;
}

std::uint64_t parse_uint64(const std::string& v, int line) {
  char* end = nullptr;
  unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0' || v.find('-') != std::string::npos)
    config_error(line, "expected a nonnegative integer, got '" + v + "'");
  return x;
}

bool parse_bool(const std::string& v, int line) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  config_error(line, "expected on/off, got '" + v + "'");
}

std::vector<std::string> split_ws(const std::string& v) {
  std::vector<std::string> out;
  std::istringstream is(v);
  std::string tok;
  while (is >> tok) {
    // allow comma separation as well
    std::string cur;
    for (char c : tok) {
      if (c == ',') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

}  // namespace

SuiteConfig SuiteConfig::from_stream(std::istream& in) {
  SuiteConfig cfg;
  std::string section;
  std::string line;
  int lineno = 0;
  bool dims_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') config_error(lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "suite" && section != "grid" && section != "quadrature" &&
          section != "bubble" && section != "tolerances" && section != "output")
        config_error(lineno, "unknown section [" + section + "]");
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) config_error(lineno, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (section.empty()) config_error(lineno, "key '" + key + "' outside any section");
    if (key.empty()) config_error(lineno, "empty key");

    if (section == "suite") {
      if (key == "dimensions") {
        dims_seen = true;
        cfg.dimensions.clear();
        for (const std::string& tok : split_ws(val))
          cfg.dimensions.push_back(static_cast<int>(parse_int(tok, lineno)));
      } else if (key == "seed") {
        cfg.seed = parse_uint64(val, lineno);
      } else {
        config_error(lineno, "unknown key '" + key + "' in [suite]");
      }
    } else if (section == "grid") {
      if (key == "L") cfg.grid_L = parse_double(val, lineno);
      else if (key == "m") cfg.grid_m = static_cast<int>(parse_int(val, lineno));
      else if (key == "order") cfg.stencil_order = static_cast<int>(parse_int(val, lineno));
      else config_error(lineno, "unknown key '" + key + "' in [grid]");
    } else if (section == "quadrature") {
      if (key == "order") cfg.quad_order = static_cast<int>(parse_int(val, lineno));
      else config_error(lineno, "unknown key '" + key + "' in [quadrature]");
    } else if (section == "bubble") {
      if (key == "lambda") cfg.lambda = parse_double(val, lineno);
      else if (key == "center") {
        cfg.center.clear();
        for (const std::string& tok : split_ws(val))
          cfg.center.push_back(parse_double(tok, lineno));
      } else if (key == "amplitude_scale") {
        cfg.amplitude_scale = parse_double(val, lineno);
      } else {
        config_error(lineno, "unknown key '" + key + "' in [bubble]");
      }
    } else if (section == "tolerances") {
      double t = parse_double(val, lineno);
      if (t < 0.0) config_error(lineno, "tolerance must be nonnegative");
      cfg.tolerance_overrides[key] = t;
    } else if (section == "output") {
      if (key == "report") cfg.report_path = val;
      else if (key == "timings") cfg.timings = parse_bool(val, lineno);
      else config_error(lineno, "unknown key '" + key + "' in [output]");
    }
  }
  if (dims_seen && cfg.dimensions.empty())
    throw std::invalid_argument("config error: nothing to verify (empty dimension list)");
  cfg.validate();
  return cfg;
}

SuiteConfig SuiteConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  return from_stream(in);
}

void SuiteConfig::validate() const {
  if (dimensions.empty())
    throw std::invalid_argument("nothing to verify (empty dimension list)");
  for (int n : dimensions)
    if (n < 2 || n > 4)
      throw std::invalid_argument("dimension out of range (supported: 2, 3, 4)");
  if (!(grid_L > 0.0) || grid_L > 100.0)
    throw std::invalid_argument("grid L must lie in (0, 100]");
  int min_m = stencil_order == 4 ? 17 : 13;
  if (grid_m < min_m || grid_m > 801 || grid_m % 2 == 0 || (grid_m - 1) % 4 != 0)
    throw std::invalid_argument("grid m must be odd, == 1 (mod 4), and within range");
  if (stencil_order != 2 && stencil_order != 4)
    throw std::invalid_argument("stencil order must be 2 or 4");
  if (quad_order < 4 || quad_order > 64)
    throw std::invalid_argument("quadrature order must lie in [4, 64]");
  if (!(lambda > 0.0) || lambda > 1e6)
    throw std::invalid_argument("lambda must lie in (0, 1e6]");
  if (!(amplitude_scale > 0.0) || amplitude_scale > 100.0)
    throw std::invalid_argument("amplitude_scale must lie in (0, 100]");
  int max_dim = *std::max_element(dimensions.begin(), dimensions.end());
  if (static_cast<int>(center.size()) > max_dim)
    throw std::invalid_argument("center has more entries than the largest dimension");
}

RealVec SuiteConfig::center_for(int n) const {
  RealVec c = RealVec::Zero(n);
  for (int i = 0; i < n && i < static_cast<int>(center.size()); ++i) c[i] = center[i];
  return c;
}

bool Report::all_pass() const {
  for (const CheckRecord& r : records)
    if (!r.pass) return false;
  return true;
}

int Report::failed() const {
  int k = 0;
  for (const CheckRecord& r : records) k += r.pass ? 0 : 1;
  return k;
}

// ---------------------------------------------------------------------------
// check harness

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

enum class Rule {
  eq,        // |measured - reference| <= tol * max(|reference|, eq-abs when ref = 0)
  at_least,  // measured >= reference - tol * |reference|
  at_most,   // measured <= reference + tol  (absolute)
  exceeds,   // measured > reference
};

bool rule_passes(Rule rule, double m, double r, double tol) {
  if (!std::isfinite(m)) return false;
  switch (rule) {
    case Rule::eq:
      if (r == 0.0) return std::abs(m) <= tol;
      return std::abs(m - r) <= tol * std::abs(r);
    case Rule::at_least:
      return m >= r - tol * std::abs(r);
    case Rule::at_most:
      return m <= r + tol;
    case Rule::exceeds:
      return m > r;
  }
  return false;
}

struct Ctx {
  const SuiteConfig& cfg;
  std::vector<CheckRecord> records;
  std::map<std::string, double> overrides;
  std::map<int, CliffordRep> reps;

  explicit Ctx(const SuiteConfig& c) : cfg(c), overrides(c.tolerance_overrides) {}

  const CliffordRep& rep(int n) {
    auto it = reps.find(n);
    if (it == reps.end()) it = reps.emplace(n, build_rep(n)).first;
    return it->second;
  }

  std::mt19937_64 rng(const std::string& id) const {
    return std::mt19937_64(cfg.seed ^ fnv1a(id));
  }

  double tol_for(const std::string& id, double dflt) {
    auto it = overrides.find(id);
    if (it == overrides.end()) return dflt;
    double t = it->second;
    overrides.erase(it);
    return t;
  }

  template <typename F>
  void run(const std::string& id, const std::string& claim, double dflt_tol, Rule rule,
           F body) {
    CheckRecord rec;
    rec.id = id;
    rec.claim = claim;
    auto t0 = std::chrono::steady_clock::now();
    bool aborted = false;
    double measured = std::numeric_limits<double>::quiet_NaN();
    double reference = 0.0;
    try {
      std::tie(measured, reference) = body();
    } catch (const std::exception& e) {
      aborted = true;
      rec.claim += std::string(" [aborted: ") + e.what() + "]";
    }
    auto t1 = std::chrono::steady_clock::now();
    rec.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rec.measured = measured;
    rec.reference = reference;
    rec.tolerance = tol_for(id, dflt_tol);
    rec.pass = !aborted && rule_passes(rule, measured, reference, rec.tolerance);
    records.push_back(std::move(rec));
  }
};

RealVec rand_point(std::mt19937_64& g, int n, double box) {
  std::uniform_real_distribution<double> u(-box, box);
  RealVec x(n);
  for (int i = 0; i < n; ++i) x[i] = u(g);
  return x;
}

RealVec rand_unit(std::mt19937_64& g, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  RealVec x(n);
  double norm = 0.0;
  while (norm < 1e-8) {
    for (int i = 0; i < n; ++i) x[i] = gauss(g);
    norm = x.norm();
  }
  return x / norm;
}

Spinor rand_spinor(std::mt19937_64& g, int N) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Spinor s(N);
  for (int i = 0; i < N; ++i) s[i] = complexd(u(g), u(g));
  return s;
}

std::string idn(const char* stem, int n) {
  return std::string(stem) + "_n" + std::to_string(n);
}

// 2n/(n-1), the critical exponent.
double crit_exp(int n) { return 2.0 * n / (n - 1.0); }

// Ratio of the configured amplitude to the ground-state norm.
double amp_scale(const BubbleParams& p) {
  return p.amplitude.norm() / ground_state_amplitude_norm(p.n);
}

GridField random_grid_field(std::mt19937_64& g, const Grid& grid, int N) {
  GridField f(grid, N);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (complexd& v : f.values) v = complexd(u(g), u(g));
  return f;
}

// Quadratic polynomial spinor with per-component coefficients and its exact
// Laplacian; stencils of order >= 2 differentiate it without truncation
// error, so D(D psi) = -lap(psi) must hold to roundoff.
struct QuadPoly {
  int n, N;
  Spinor eval(const RealVec& x) const {
    Spinor s(N);
    for (int i = 0; i < N; ++i) {
      double a = 0.3 + 0.1 * i, b = -0.7 + 0.2 * i, c = 0.4 - 0.05 * i;
      double cross = (n >= 2) ? 0.25 * x[0] * x[1] : 0.0;
      s[i] = complexd(a * x.squaredNorm() + cross + b * x[0] + c,
                      0.5 * a * x.squaredNorm() - b * x[n - 1]);
    }
    return s;
  }
  Spinor lap(const RealVec&) const {
    Spinor s(N);
    for (int i = 0; i < N; ++i) {
      double a = 0.3 + 0.1 * i;
      s[i] = complexd(2.0 * n * a, n * a);
    }
    return s;
  }
};

double sup_diff_rel(const GridField& a, const GridField& b) {
  double diff = 0.0, scale = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) {
    diff = std::max(diff, std::abs(a.values[i] - b.values[i]));
    scale = std::max(scale, std::abs(b.values[i]));
  }
  return diff / std::max(scale, 1e-300);
}

// ---------------------------------------------------------------------------
// per-dimension checks

void add_dimension_checks(Ctx& ctx, int n) {
  const SuiteConfig& cfg = ctx.cfg;
  const CliffordRep& rep = ctx.rep(n);
  const RealVec center = cfg.center_for(n);
  BubbleParams p = BubbleParams::ground_state(n, cfg.lambda, center);
  p.amplitude *= cfg.amplitude_scale;
  const BubbleParams ground = BubbleParams::ground_state(n, cfg.lambda, center);
  const DerivativeStencil st = DerivativeStencil::central(cfg.stencil_order);

  ctx.run(idn("clifford_relations", n),
          "generators anticommute to -2 delta_jk and are skew-hermitian, defect exactly 0",
          1e-14, Rule::eq, [&] {
            return std::pair(relation_defect(rep), 0.0);
          });

  ctx.run(idn("clifford_isometry", n),
          "|gamma(v) s| = |v||s| for random vectors and spinors",
          1e-12, Rule::eq, [&] {
            auto g = ctx.rng(idn("clifford_isometry", n));
            double worst = 0.0;
            for (int t = 0; t < 200; ++t) {
              RealVec v = rand_point(g, n, 2.0);
              Spinor s = rand_spinor(g, rep.N);
              double lhs = clifford_mul(rep, v, s).norm();
              double rhs = v.norm() * s.norm();
              if (rhs > 1e-12) worst = std::max(worst, std::abs(lhs / rhs - 1.0));
            }
            return std::pair(worst, 0.0);
          });

  ctx.run(idn("stereo_roundtrip", n),
          "stereographic chart x = y'/(1 - y_{n+1}) inverts y = ((2x, |x|^2-1))/(1+|x|^2)",
          1e-11, Rule::eq, [&] {
            auto g = ctx.rng(idn("stereo_roundtrip", n));
            double worst = 0.0;
            for (int t = 0; t < 300; ++t) {
              RealVec x = rand_point(g, n, 5.0);
              worst = std::max(worst, (stereo_to_plane(stereo_to_sphere(x)) - x).norm());
              RealVec y = rand_unit(g, n + 1);
              if (y[n] > 0.99) continue;
              worst = std::max(worst, (stereo_to_sphere(stereo_to_plane(y)) - y).norm());
            }
            return std::pair(worst, 0.0);
          });

  ctx.run(idn("stereo_conformal", n),
          "pullback of the round metric stretches lengths by 2/(1+|x|^2)",
          1e-6, Rule::eq, [&] {
            auto g = ctx.rng(idn("stereo_conformal", n));
            double worst = 0.0;
            const double h = 1e-5;
            for (int t = 0; t < 50; ++t) {
              RealVec x = rand_point(g, n, 3.0);
              RealVec v = rand_unit(g, n);
              RealVec yp = stereo_to_sphere(x + h * v);
              RealVec ym = stereo_to_sphere(x - h * v);
              double stretch = (yp - ym).norm() / (2.0 * h);
              worst = std::max(worst, std::abs(stretch / conformal_factor(x) - 1.0));
            }
            return std::pair(worst, 0.0);
          });

  ctx.run(idn("bubble_length_agreement", n),
          "|psi(x)| matches the closed-form radial length profile",
          1e-12, Rule::eq, [&] {
            auto g = ctx.rng(idn("bubble_length_agreement", n));
            double worst = 0.0;
            for (int t = 0; t < 300; ++t) {
              RealVec x = center + rand_point(g, n, 3.0 * cfg.lambda);
              double len = bubble_eval(rep, p, x).norm();
              double ref = bubble_length(p, (x - center).norm());
              worst = std::max(worst, std::abs(len / ref - 1.0));
            }
            return std::pair(worst, 0.0);
          });

  ctx.run(idn("bubble_decay", n),
          "r^{n-1} |psi| approaches the closed-form limit along random rays",
          1e-4, Rule::eq, [&] {
            auto g = ctx.rng(idn("bubble_decay", n));
            double r = 1e3 * cfg.lambda;
            double limit = bubble_decay_limit(p);
            double worst = 0.0;
            for (int t = 0; t < 20; ++t) {
              RealVec x = center + r * rand_unit(g, n);
              double val = std::pow(r, n - 1.0) * bubble_eval(rep, p, x).norm();
              worst = std::max(worst, std::abs(val / limit - 1.0));
            }
            return std::pair(worst, 0.0);
          });

  ctx.run(idn("bubble_decay_slope", n),
          "log-log slope of |psi| between r = 1e2 and 1e3 lambda is -(n-1)",
          1e-3, Rule::eq, [&] {
            auto g = ctx.rng(idn("bubble_decay_slope", n));
            SpinorField f = bubble_field(rep, p);
            double slope = measured_decay_slope(f, rand_unit(g, n), 1e2 * cfg.lambda,
                                                1e3 * cfg.lambda);
            return std::pair(slope, -(n - 1.0));
          });

  ctx.run(idn("bubble_floor", n),
          "min |psi| over the sample grid stays above the closed-form corner value",
          1e-12, Rule::at_least, [&] {
            Grid grid(n, cfg.grid_L * cfg.lambda, 41);
            double lo = std::numeric_limits<double>::infinity();
            std::vector<int> idx(n, 0);
            RealVec x(n);
            bool done = false;
            while (!done) {
              for (int a = 0; a < n; ++a) x[a] = center[a] + grid.node(idx[a]);
              lo = std::min(lo, bubble_eval(rep, p, x).norm());
              int a = n - 1;
              while (a >= 0 && ++idx[a] == grid.m) idx[a--] = 0;
              done = a < 0;
            }
            double floor = bubble_length(p, grid.L * std::sqrt(double(n)));
            return std::pair(lo, floor);
          });

  ctx.run(idn("mobius_composition", n),
          "dilation-translation parameter action composes as a group and the "
          "transformed field is the conformal pullback",
          1e-12, Rule::eq, [&] {
            auto g = ctx.rng(idn("mobius_composition", n));
            RealVec t1 = rand_point(g, n, 2.0), t2 = rand_point(g, n, 2.0);
            double m1 = 1.7, m2 = 0.6;
            BubbleParams q1 = mobius_transform(mobius_transform(p, t1, m1), t2, m2);
            BubbleParams q2 = mobius_transform(p, t2 + m2 * t1, m2 * m1);
            double worst = std::abs(q1.lambda / q2.lambda - 1.0);
            worst = std::max(worst, (q1.center - q2.center).norm() /
                                        std::max(1.0, q2.center.norm()));
            BubbleParams moved = mobius_transform(p, t1, m1);
            for (int t = 0; t < 30; ++t) {
              RealVec x = rand_point(g, n, 4.0);
              Spinor lhs = bubble_eval(rep, moved, x);
              Spinor rhs = std::pow(m1, -(n - 1.0) / 2.0) *
                           bubble_eval(rep, p, RealVec((x - t1) / m1));
              worst = std::max(worst, (lhs - rhs).norm() / rhs.norm());
            }
            return std::pair(worst, 0.0);
          });

  ctx.run(idn("sphere_trace_round", n),
          "conformally weighted sphere trace of the unit bubble has constant length (n/2)^{(n-1)/2}",
          1e-12, Rule::eq, [&] {
            auto g = ctx.rng(idn("sphere_trace_round", n));
            BubbleParams unit = BubbleParams::ground_state(n, 1.0, RealVec::Zero(n));
            unit.amplitude *= cfg.amplitude_scale;
            double ref = cfg.amplitude_scale * std::pow(n / 2.0, (n - 1.0) / 2.0);
            double worst = 0.0;
            for (int t = 0; t < 2000; ++t) {
              RealVec y = rand_unit(g, n + 1);
              if (y[n] > 1.0 - 1e-9) continue;
              worst = std::max(worst, std::abs(sphere_trace_length(unit, y) / ref - 1.0));
            }
            return std::pair(worst, 0.0);
          });

  ctx.run(idn("sphere_trace_moved", n),
          "trace length of a lambda = 2 bubble deviates measurably from the round constant",
          0.0, Rule::exceeds, [&] {
            auto g = ctx.rng(idn("sphere_trace_moved", n));
            BubbleParams moved = BubbleParams::ground_state(n, 2.0, RealVec::Zero(n));
            double ref = std::pow(n / 2.0, (n - 1.0) / 2.0);
            double worst = 0.0;
            for (int t = 0; t < 2000; ++t) {
              RealVec y = rand_unit(g, n + 1);
              if (y[n] > 1.0 - 1e-9) continue;
              worst = std::max(worst, std::abs(sphere_trace_length(moved, y) / ref - 1.0));
            }
            return std::pair(worst, 1e-3);
          });

  ctx.run(idn("twistor_killing", n),
          "gamma(x) Phi on the ambient space has vanishing Penrose defect and "
          "D(gamma(x) Phi) = -(dim) Phi; constants are twistor spinors too",
          1e-13, Rule::eq, [&] {
            auto g = ctx.rng(idn("twistor_killing", n));
            const CliffordRep& arep = ctx.rep(n + 1);
            Spinor phi = rand_spinor(g, arep.N);
            phi /= phi.norm();
            AmbientField tw = twistor_field(arep, phi);
            AmbientField cf = constant_field(arep, phi);
            std::vector<RealVec> pts;
            for (int t = 0; t < 40; ++t) pts.push_back(rand_point(g, n + 1, 2.0));
            double worst = std::max(killing_defect(tw, arep, pts),
                                    killing_defect(cf, arep, pts));
            for (const RealVec& x : pts) {
              Spinor d = dirac_exact(tw, arep, x) + double(n + 1) * phi;
              worst = std::max(worst, d.norm());
            }
            return std::pair(worst, 0.0);
          });

  ctx.run(idn("twistor_control", n),
          "|x|^2 Phi is not a twistor spinor: the defect stays bounded away from zero",
          0.0, Rule::exceeds, [&] {
            auto g = ctx.rng(idn("twistor_control", n));
            const CliffordRep& arep = ctx.rep(n + 1);
            Spinor phi = rand_spinor(g, arep.N);
            phi /= phi.norm();
            AmbientField bad = radial_square_field(arep, phi);
            std::vector<RealVec> pts;
            for (int t = 0; t < 40; ++t) pts.push_back(rand_point(g, n + 1, 2.0));
            return std::pair(killing_defect(bad, arep, pts), 1e-3);
          });

  ctx.run(idn("penrose_decomposition", n),
          "|grad psi|^2 = |P psi|^2 + (1/n)|D psi|^2 at every interior node, "
          "random fields and the bubble",
          1e-12, Rule::eq, [&] {
            auto g = ctx.rng(idn("penrose_decomposition", n));
            double worst = 0.0;
            Grid small(n, 1.0, 7);
            for (int t = 0; t < 3; ++t) {
              GridField f = random_grid_field(g, small, rep.N);
              worst = std::max(worst, penrose_dirac_gap(f, rep, st));
            }
            Grid bg(n, 2.0 * cfg.lambda, 15);
            GridField bf = sample_field(bg, rep.N,
                                        [&](const RealVec& x) { return bubble_eval(rep, p, x); },
                                        center);
            worst = std::max(worst, penrose_dirac_gap(bf, rep, st));
            return std::pair(worst, 0.0);
          });

  ctx.run(idn("dirac_squared", n),
          "D(D psi) = -lap(psi) exactly on quadratic polynomial spinors, both stencil orders",
          1e-12, Rule::eq, [&] {
            double worst = 0.0;
            for (int order : {2, 4}) {
              DerivativeStencil s = DerivativeStencil::central(order);
              Grid grid(n, 1.2, order == 2 ? 9 : 13);
              QuadPoly poly{n, rep.N};
              RealVec zero = RealVec::Zero(n);
              GridField f = sample_field(grid, rep.N,
                                         [&](const RealVec& x) { return poly.eval(x); }, zero);
              GridField d2 = dirac_apply(dirac_apply(f, rep, s), rep, s);
              GridField ref = sample_field(d2.grid, rep.N,
                                           [&](const RealVec& x) { return Spinor(-poly.lap(x)); },
                                           zero);
              worst = std::max(worst, sup_diff_rel(d2, ref));
            }
            return std::pair(worst, 0.0);
          });

  {
    // share the two residual evaluations between the bound and order records
    int m_fine = n == 4 ? 41 : cfg.grid_m;
    int m_coarse = n == 4 ? 21 : (n == 2 ? cfg.grid_m : (cfg.grid_m + 1) / 2);
    int m_fine2 = n == 2 ? 2 * cfg.grid_m - 1 : m_fine;
    double L = cfg.grid_L * cfg.lambda;
    double tol = n == 4 ? 1e-1 : 5e-3;
    ctx.run(idn("nonlinear_residual", n),
            "collocation sup residual of D psi = |psi|^{2/(n-1)} psi on the default grid",
            tol, Rule::eq, [&] {
              ResidualNorms r = nonlinear_residual(rep, p, Grid(n, L, m_fine), st);
              return std::pair(r.sup_rel, 0.0);
            });
    ctx.run(idn("nonlinear_residual_order", n),
            "halving h cuts the ground-state residual by the stencil-order factor",
            0.2, Rule::eq, [&] {
              ResidualNorms rc = nonlinear_residual(rep, ground, Grid(n, L, m_coarse), st);
              ResidualNorms rf = nonlinear_residual(rep, ground, Grid(n, L, m_fine2), st);
              double expect = std::pow(2.0, cfg.stencil_order);
              return std::pair(rc.sup_rel / rf.sup_rel, expect);
            });
  }

  {
    double s = amp_scale(p);
    double mass_scale = std::pow(s, crit_exp(n));
    ctx.run(idn("action_value", n),
            "quadrature action matches the closed form (1/2n)(n/2)^n vol(S^n) "
            "scaled by the amplitude power",
            1e-8, Rule::eq, [&] {
              return std::pair(action(p), mass_scale * action_reference(n));
            });
    ctx.run(idn("action_invariance", n),
            "action is invariant under dilation and translation of the family",
            1e-9, Rule::eq, [&] {
              auto g = ctx.rng(idn("action_invariance", n));
              BubbleParams moved = mobius_transform(p, rand_point(g, n, 2.0), 1.7);
              return std::pair(action(moved), action(p));
            });
    ctx.run(idn("action_lower_bound", n),
            "action attains the sharp lower bound (1/2n)(n/2)^n vol(S^n), "
            "equality certifying the ground state",
            1e-8, Rule::eq, [&] {
              return std::pair(action(p), action_reference(n));
            });
    ctx.run(idn("sobolev_quotient", n),
            "(int |psi|^{2n/(n-1)})^{1/n} equals (n/2) vol(S^n)^{1/n} up to the amplitude power",
            1e-8, Rule::eq, [&] {
              return std::pair(sobolev_quotient(p),
                               std::pow(mass_scale, 1.0 / n) * sobolev_reference(n));
            });
  }

  ctx.run(idn("parameter_count", n),
          "free real parameters of the family: amplitude sphere + lambda + center "
          "= 2^{floor(n/2)+1} + n",
          0.0, Rule::eq, [&] {
            double count = (2.0 * rep.N - 1.0) + n + 1.0;
            double predicted = std::pow(2.0, n / 2 + 1) + n;
            return std::pair(count, predicted);
          });

  if (n >= 3) {
    int m_fine = n == 4 ? 41 : cfg.grid_m;
    int m_coarse = n == 4 ? 21 : (cfg.grid_m + 1) / 2;
    double L = cfg.grid_L * cfg.lambda;
    double tol = n == 4 ? 0.15 : 5e-3;
    ctx.run(idn("yamabe_residual", n),
            "Aubin-Talenti bubble solves -c_n lap u = n(n-1) u^{(n+2)/(n-2)} to stencil accuracy",
            tol, Rule::eq, [&] {
              return std::pair(
                  yamabe_residual(n, cfg.lambda, center, Grid(n, L, m_fine), st), 0.0);
            });
    ctx.run(idn("yamabe_residual_order", n),
            "halving h cuts the Yamabe residual by the stencil-order factor",
            n == 4 ? 0.3 : 0.2, Rule::eq, [&] {
              double rc = yamabe_residual(n, cfg.lambda, center, Grid(n, L, m_coarse), st);
              double rf = yamabe_residual(n, cfg.lambda, center, Grid(n, L, m_fine), st);
              return std::pair(rc / rf, std::pow(2.0, cfg.stencil_order));
            });
    ctx.run(idn("length_coupling", n),
            "spinor length to the power (n-2)/(n-1), conformally reweighted, "
            "is the Aubin-Talenti profile",
            1e-12, Rule::eq, [&] {
              auto g = ctx.rng(idn("length_coupling", n));
              std::uniform_int_distribution<std::uint64_t> any;
              return std::pair(length_coupling_check(ground, 200, any(g)), 0.0);
            });
    ctx.run(idn("yamabe_invariant", n),
            "flat Yamabe quotient of the Talenti bubble equals n(n-1) vol(S^n)^{2/n}",
            1e-6, Rule::eq, [&] {
              FunctionalReport r = yamabe_invariant_check(n, cfg.lambda);
              return std::pair(r.measured, r.reference);
            });
  }

  if (n == 2) {
    double L = 4.0 / cfg.lambda;
    RealVec z0 = center;
    const DerivativeStencil st2 = DerivativeStencil::central(2);
    ctx.run("liouville_residual_n2",
            "-lap v = e^{2v} at the explicit profile, collocation residual",
            2e-3, Rule::eq, [&] {
              return std::pair(liouville_residual(cfg.lambda, z0, Grid(2, L, 201), st2), 0.0);
            });
    ctx.run("liouville_residual_order_n2",
            "halving h cuts the Liouville residual by the order-2 factor",
            0.2, Rule::eq, [&] {
              double rc = liouville_residual(cfg.lambda, z0, Grid(2, L, 101), st2);
              double rf = liouville_residual(cfg.lambda, z0, Grid(2, L, 201), st2);
              return std::pair(rc / rf, 4.0);
            });
    ctx.run("liouville_curvature_n2",
            "total curvature int e^{2v} equals 4 pi for every lambda",
            1e-8, Rule::eq, [&] {
              return std::pair(liouville_total_curvature(cfg.lambda), 4.0 * kPi);
            });
  }
}

// ---------------------------------------------------------------------------
// global checks (fixed dimensions, independent of the configured list)

void add_global_checks(Ctx& ctx) {
  const SuiteConfig& cfg = ctx.cfg;

  for (int dim : {1, 2, 3}) {
    std::string id = "quad_moments_s" + std::to_string(dim);
    ctx.run(id,
            "product quadrature integrates all monomials of degree <= 8 exactly "
            "(Gamma-function moments)",
            1e-12, Rule::eq, [&] {
              SphereQuadrature q = sphere_quadrature(dim, 12);
              double worst = 0.0;
              std::vector<int> expo(dim + 1, 0);
              // odometer over exponents with total degree <= 8
              while (true) {
                int total = 0;
                for (int e : expo) total += e;
                if (total <= 8) {
                  double acc = 0.0;
                  for (size_t i = 0; i < q.nodes.size(); ++i) {
                    double term = q.weights[i];
                    for (int a = 0; a <= dim; ++a)
                      term *= std::pow(q.nodes[i][a], expo[a]);
                    acc += term;
                  }
                  bool odd = false;
                  for (int e : expo)
                    if (e % 2) odd = true;
                  double ref = 0.0;
                  if (!odd) {
                    double num = 2.0, den = 0.0;
                    for (int e : expo) num *= std::tgamma((e + 1) / 2.0);
                    for (int e : expo) den += (e + 1) / 2.0;
                    ref = num / std::tgamma(den);
                  }
                  worst = std::max(worst, std::abs(acc - ref));
                }
                int a = dim;
                while (a >= 0 && ++expo[a] > 8) expo[a--] = 0;
                if (a < 0) break;
              }
              return std::pair(worst, 0.0);
            });
  }

  ctx.run("quad_radial_gaussian_n2",
          "radial quadrature: int_{R^2} e^{-|x|^2} = pi",
          1e-10, Rule::eq, [&] {
            double v = radial_integral([](double r) { return std::exp(-r * r); }, 2);
            return std::pair(v, kPi);
          });

  ctx.run("quad_radial_bubble_n3",
          "radial quadrature: int_{R^3} (3/(1+r^2))^3 = 27 pi^2 / 4",
          1e-9, Rule::eq, [&] {
            double v = radial_integral(
                [](double r) { return std::pow(3.0 / (1.0 + r * r), 3.0); }, 3);
            return std::pair(v, 27.0 * kPi * kPi / 4.0);
          });

  ctx.run("gegenbauer_genfun",
          "sum_k s^k C_k^tau(t) reproduces (1 - 2st + s^2)^{-tau}",
          1e-12, Rule::eq, [&] {
            double worst = 0.0;
            for (double tau : {0.5, 1.5}) {
              for (double t : {-0.9, -0.3, 0.2, 0.7, 0.95}) {
                double s = 0.4, acc = 0.0, sk = 1.0;
                for (int k = 0; k <= 60; ++k) {
                  acc += sk * gegenbauer(tau, k, t);
                  sk *= s;
                }
                double ref = std::pow(1.0 - 2.0 * s * t + s * s, -tau);
                worst = std::max(worst, std::abs(acc / ref - 1.0));
              }
            }
            return std::pair(worst, 0.0);
          });

  ctx.run("gegenbauer_legendre",
          "C_k^{1/2} coincides with the Legendre polynomials",
          1e-13, Rule::eq, [&] {
            auto g = ctx.rng("gegenbauer_legendre");
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            double worst = 0.0;
            for (int t = 0; t < 50; ++t) {
              double x = u(g);
              double pkm = 1.0, pk = x;
              for (int k = 1; k <= 20; ++k) {
                worst = std::max(worst, std::abs(gegenbauer(0.5, k, x) - pk));
                double pn = ((2.0 * k + 1.0) * x * pk - k * pkm) / (k + 1.0);
                pkm = pk;
                pk = pn;
              }
            }
            return std::pair(worst, 0.0);
          });

  ctx.run("gegenbauer_growth",
          "max_t |d^j C_k^{1/2}| grows no faster than k^{2j} (log-log slope bound)",
          0.2, Rule::at_most, [&] {
            double worst = -10.0;
            for (int j = 0; j <= 2; ++j) {
              auto peak = [&](int k) {
                double best = 0.0;
                for (int i = 0; i <= 200; ++i) {
                  double t = -1.0 + 2.0 * i / 200.0;
                  best = std::max(best, std::abs(gegenbauer_derivative(0.5, k, t, j)));
                }
                return best;
              };
              double slope = std::log(peak(120) / peak(40)) / std::log(120.0 / 40.0);
              worst = std::max(worst, slope - 2.0 * j);
            }
            return std::pair(worst, 0.0);
          });

  {
    const CliffordRep& rep3 = ctx.rep(3);

    ctx.run("kernel_pole_n3",
            "G(d) = gamma(d)/(vol(S^2)|d|^3): value at e1, oddness, operator norm",
            1e-13, Rule::eq, [&] {
              auto g = ctx.rng("kernel_pole_n3");
              RealVec e1 = RealVec::Zero(3);
              e1[0] = 1.0;
              double worst =
                  (kernel_G(rep3, e1) - rep3.gamma[0] / (4.0 * kPi)).cwiseAbs().maxCoeff();
              for (int t = 0; t < 20; ++t) {
                RealVec d = rand_point(g, 3, 2.0);
                if (d.norm() < 0.1) continue;
                Matrix s = kernel_G(rep3, d) + kernel_G(rep3, RealVec(-d));
                worst = std::max(worst, s.cwiseAbs().maxCoeff());
                double nrm = kernel_G(rep3, d).operatorNorm();
                double ref = std::pow(d.norm(), -2.0) / (4.0 * kPi);
                worst = std::max(worst, std::abs(nrm / ref - 1.0));
              }
              return std::pair(worst, 0.0);
            });

    ctx.run("kernel_series_n3",
            "Gegenbauer expansion of G matches the closed form at |x|/|y| = 0.3, K = 60",
            1e-10, Rule::eq, [&] {
              auto g = ctx.rng("kernel_series_n3");
              double worst = 0.0;
              for (int t = 0; t < 5; ++t) {
                RealVec x = 0.3 * rand_unit(g, 3);
                RealVec y = rand_unit(g, 3);
                Matrix s = series_expand_kernel(rep3, x, y, 60);
                Matrix ref = kernel_G(rep3, RealVec(x - y));
                worst = std::max(worst, (s - ref).cwiseAbs().maxCoeff() /
                                            ref.cwiseAbs().maxCoeff());
              }
              return std::pair(worst, 0.0);
            });

    ctx.run("kernel_series_origin_n3",
            "at x = 0 only the k = 1 term survives; K = 2 is already exact",
            1e-13, Rule::eq, [&] {
              auto g = ctx.rng("kernel_series_origin_n3");
              RealVec y = 1.3 * rand_unit(g, 3);
              Matrix s = series_expand_kernel(rep3, RealVec::Zero(3), y, 2);
              Matrix ref = kernel_G(rep3, RealVec(-y));
              return std::pair((s - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff(),
                               0.0);
            });

    ctx.run("kernel_series_decay_n3",
            "truncation error decays geometrically: per-index log slope is log(|x|/|y|)",
            0.08, Rule::eq, [&] {
              auto g = ctx.rng("kernel_series_decay_n3");
              RealVec x = 0.3 * rand_unit(g, 3);
              RealVec y = rand_unit(g, 3);
              Matrix ref = kernel_G(rep3, RealVec(x - y));
              auto err = [&](int K) {
                return (series_expand_kernel(rep3, x, y, K) - ref).cwiseAbs().maxCoeff();
              };
              // least-squares slope of log err over K = 8..24, a window far
              // above the roundoff floor the tail of the series sits on
              double sk = 0.0, se = 0.0, skk = 0.0, ske = 0.0;
              int cnt = 0;
              for (int K = 8; K <= 24; ++K) {
                double le = std::log(err(K));
                sk += K;
                se += le;
                skk += double(K) * K;
                ske += K * le;
                ++cnt;
              }
              double slope = (cnt * ske - sk * se) / (cnt * skk - sk * sk);
              return std::pair(slope, std::log(0.3));
            });

    ctx.run("xi_homogeneity_n3",
            "Xi_k(mu x, y) = mu^{k-1} Xi_k(x, y)",
            1e-12, Rule::eq, [&] {
              auto g = ctx.rng("xi_homogeneity_n3");
              double worst = 0.0;
              for (int k = 1; k <= 5; ++k) {
                RealVec x = rand_point(g, 3, 1.0), y = rand_unit(g, 3);
                for (double mu : {0.5, 2.3}) {
                  Matrix lhs = xi_matrix(rep3, k, RealVec(mu * x), y);
                  Matrix rhs = std::pow(mu, k - 1.0) * xi_matrix(rep3, k, x, y);
                  double scale = std::max(rhs.cwiseAbs().maxCoeff(), 1e-12);
                  worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff() / scale);
                }
              }
              return std::pair(worst, 0.0);
            });

    ctx.run("xi_harmonic_n3",
            "entries of Xi_k are harmonic and its columns Dirac-null "
            "(finite-difference stencil in x)",
            1e-7, Rule::eq, [&] {
              auto g = ctx.rng("xi_harmonic_n3");
              // fourth-order stencils differentiate the polynomial entries
              // (degree <= 3 for k <= 4) exactly; only roundoff remains
              const double h = 1e-3;
              double worst = 0.0;
              for (int k = 2; k <= 4; ++k) {
                RealVec x = rand_point(g, 3, 0.8), y = rand_unit(g, 3);
                Matrix at = xi_matrix(rep3, k, x, y);
                double scale = std::max(at.cwiseAbs().maxCoeff(), 1.0);
                Matrix lap = Matrix::Zero(rep3.N, rep3.N);
                Matrix dir = Matrix::Zero(rep3.N, rep3.N);
                for (int j = 0; j < 3; ++j) {
                  RealVec xp = x, xm = x, xp2 = x, xm2 = x;
                  xp[j] += h;
                  xm[j] -= h;
                  xp2[j] += 2 * h;
                  xm2[j] -= 2 * h;
                  Matrix fp = xi_matrix(rep3, k, xp, y);
                  Matrix fm = xi_matrix(rep3, k, xm, y);
                  Matrix fp2 = xi_matrix(rep3, k, xp2, y);
                  Matrix fm2 = xi_matrix(rep3, k, xm2, y);
                  lap += (-fp2 + 16.0 * fp - 30.0 * at + 16.0 * fm - fm2) / (12.0 * h * h);
                  dir += rep3.gamma[j] * (-fp2 + 8.0 * fp - 8.0 * fm + fm2) / (12.0 * h);
                }
                worst = std::max(worst, lap.cwiseAbs().maxCoeff() / scale);
                worst = std::max(worst, dir.cwiseAbs().maxCoeff() / scale);
              }
              return std::pair(worst, 0.0);
            });

    ctx.run("representation_constant_n3",
            "boundary Green integral reproduces a constant spinor at the origin",
            1e-12, Rule::eq, [&] {
              auto g = ctx.rng("representation_constant_n3");
              Spinor c = rand_spinor(g, rep3.N);
              SphereQuadrature surf = sphere_quadrature(2, cfg.quad_order);
              Spinor got = representation_reconstruct(
                  rep3, [&](const RealVec&) { return c; }, SpinorEvaluator(),
                  RealVec::Zero(3), surf, 0);
              return std::pair((got - c).norm() / c.norm(), 0.0);
            });

    ctx.run("representation_interior_n3",
            "boundary Green integral reproduces a constant spinor at random interior points",
            1e-8, Rule::eq, [&] {
              auto g = ctx.rng("representation_interior_n3");
              Spinor c = rand_spinor(g, rep3.N);
              SphereQuadrature surf = sphere_quadrature(2, 40);
              double worst = 0.0;
              for (int t = 0; t < 5; ++t) {
                RealVec x = rand_point(g, 3, 0.5 / std::sqrt(3.0));
                Spinor got = representation_reconstruct(
                    rep3, [&](const RealVec&) { return c; }, SpinorEvaluator(), x, surf, 0);
                worst = std::max(worst, (got - c).norm() / c.norm());
              }
              return std::pair(worst, 0.0);
            });

    ctx.run("harmonic_constant_n3",
            "projection Q_1 of constant boundary data returns the constant; Q_2, Q_3 vanish",
            1e-12, Rule::eq, [&] {
              auto g = ctx.rng("harmonic_constant_n3");
              Spinor c = rand_spinor(g, rep3.N);
              SphereQuadrature surf = sphere_quadrature(2, cfg.quad_order);
              SpinorEvaluator data = [&](const RealVec&) { return c; };
              double worst = 0.0;
              for (int t = 0; t < 5; ++t) {
                RealVec x = rand_point(g, 3, 0.9);
                worst = std::max(worst,
                                 (harmonic_projection(rep3, data, 1, surf)(x) - c).norm() /
                                     c.norm());
                for (int k : {2, 3}) {
                  worst = std::max(worst,
                                   harmonic_projection(rep3, data, k, surf)(x).norm() /
                                       c.norm());
                }
              }
              return std::pair(worst, 0.0);
            });

    {
      // shared D-harmonic boundary data of homogeneous degrees 0, 1, 2
      ctx.run("harmonic_reproduce_n3",
              "a D-harmonic field with degree-d homogeneous components is returned "
              "by Q_{d+1} alone",
              1e-10, Rule::eq, [&] {
                auto g = ctx.rng("harmonic_reproduce_n3");
                Spinor w = rand_spinor(g, rep3.N);
                Spinor u = rand_spinor(g, rep3.N);
                RealVec a = rand_unit(g, 3);
                // degree 1: (x1 g1 + x2 g2 - 2 x3 g3) w has D = -(1+1-2) w = 0
                auto lin = [&](const RealVec& x) {
                  return Spinor(x[0] * rep3.gamma[0] * w + x[1] * rep3.gamma[1] * w -
                                2.0 * x[2] * rep3.gamma[2] * w);
                };
                // degree 2: columns of Xi_3 are D-harmonic polynomials
                auto quad = [&](const RealVec& x) {
                  return Spinor(xi_matrix(rep3, 3, x, a) * u);
                };
                SphereQuadrature surf = sphere_quadrature(2, cfg.quad_order);
                double worst = 0.0;
                for (int t = 0; t < 4; ++t) {
                  RealVec x = rand_point(g, 3, 0.8);
                  double s1 = std::max(lin(x).norm(), 1e-6);
                  double s2 = std::max(quad(x).norm(), 1e-6);
                  worst = std::max(worst,
                                   (harmonic_projection(rep3, lin, 2, surf)(x) - lin(x)).norm() / s1);
                  worst = std::max(worst,
                                   harmonic_projection(rep3, lin, 1, surf)(x).norm() / s1);
                  worst = std::max(worst,
                                   harmonic_projection(rep3, lin, 3, surf)(x).norm() / s1);
                  worst = std::max(worst,
                                   (harmonic_projection(rep3, quad, 3, surf)(x) - quad(x)).norm() / s2);
                  worst = std::max(worst,
                                   harmonic_projection(rep3, quad, 1, surf)(x).norm() / s2);
                }
                return std::pair(worst, 0.0);
              });

      ctx.run("harmonic_dirac_n3",
              "every projection Q_k is Dirac-null (finite-difference check)",
              1e-7, Rule::eq, [&] {
                auto g = ctx.rng("harmonic_dirac_n3");
                Spinor w = rand_spinor(g, rep3.N);
                Spinor u = rand_spinor(g, rep3.N);
                Spinor c = rand_spinor(g, rep3.N);
                RealVec a = rand_unit(g, 3);
                SpinorEvaluator data = [&](const RealVec& y) {
                  return Spinor(c + y[0] * rep3.gamma[0] * w + y[1] * rep3.gamma[1] * w -
                                2.0 * y[2] * rep3.gamma[2] * w +
                                xi_matrix(rep3, 3, y, a) * u);
                };
                SphereQuadrature surf = sphere_quadrature(2, cfg.quad_order);
                const double h = 1e-3;
                double worst = 0.0;
                for (int k = 1; k <= 4; ++k) {
                  SpinorEvaluator q = harmonic_projection(rep3, data, k, surf);
                  for (int t = 0; t < 3; ++t) {
                    RealVec x = rand_point(g, 3, 0.7);
                    Spinor d = Spinor::Zero(rep3.N);
                    for (int j = 0; j < 3; ++j) {
                      RealVec xp = x, xm = x;
                      xp[j] += h;
                      xm[j] -= h;
                      d += rep3.gamma[j] * (q(xp) - q(xm)) / (2.0 * h);
                    }
                    double scale = std::max(q(x).norm(), 1e-3);
                    worst = std::max(worst, d.norm() / scale);
                  }
                }
                return std::pair(worst, 0.0);
              });
    }
  }

  {
    const CliffordRep& rep2 = ctx.rep(2);
    BubbleParams unit = BubbleParams::ground_state(2, 1.0, RealVec::Zero(2));
    SpinorEvaluator f = [&](const RealVec& x) { return bubble_eval(rep2, unit, x); };
    SpinorEvaluator df = [&](const RealVec& x) {
      Spinor v = bubble_eval(rep2, unit, x);
      return Spinor(std::pow(v.squaredNorm(), 1.0) * v);
    };
    // evaluation point on a cell center of the finer midpoint lattice, so the
    // excluded singular cell is symmetric and its neighbors cancel in pairs
    RealVec x0(2);
    x0 << 2.5 / 24.0, 2.5 / 24.0;
    auto err_at = [&](int res) {
      SphereQuadrature surf = sphere_quadrature(1, 64);
      Spinor got = representation_reconstruct(rep2, f, df, x0, surf, res);
      return (got - f(x0)).norm() / f(x0).norm();
    };
    ctx.run("representation_bubble_n2",
            "interior + boundary Green integrals rebuild the bubble on the unit disk",
            5e-2, Rule::eq, [&] { return std::pair(err_at(48), 0.0); });
    ctx.run("representation_bubble_refine_n2",
            "volume-quadrature refinement shrinks the reconstruction error",
            0.0, Rule::exceeds, [&] {
              double coarse = err_at(12), fine = err_at(48);
              return std::pair(coarse / fine, 1.25);
            });
  }

  {
    // scaling convention: lambda^{-(n-1)/2} with z = (x - x0)/lambda keeps
    // the equation exactly; the lambda^{-n/2} prefactor does not.
    const CliffordRep& rep2 = ctx.rep(2);
    const DerivativeStencil st2 = DerivativeStencil::central(2);
    ctx.run("bubble_scaling_pde",
            "the lambda^{-(n-1)/2} normalization solves the equation for lambda = 2",
            2e-2, Rule::eq, [&] {
              BubbleParams q = BubbleParams::ground_state(2, 2.0, RealVec::Zero(2));
              ResidualNorms r = nonlinear_residual(rep2, q, Grid(2, 8.0, 81), st2);
              return std::pair(r.sup_rel, 0.0);
            });
    ctx.run("bubble_scaling_alt",
            "the alternative lambda^{-n/2} prefactor leaves a finite residual "
            "|1 - lambda^{-1/(n-1)}|",
            0.0, Rule::exceeds, [&] {
              BubbleParams q = BubbleParams::ground_state(2, 2.0, RealVec::Zero(2));
              q.amplitude *= std::pow(2.0, -0.5);
              ResidualNorms r = nonlinear_residual(rep2, q, Grid(2, 8.0, 81), st2);
              return std::pair(r.sup_rel, 0.1);
            });
  }

  bool has3 = false, has4 = false;
  for (int n : cfg.dimensions) {
    has3 |= n == 3;
    has4 |= n == 4;
  }
  if (!has4) {
    ctx.run("sobolev_quotient_n4",
            "(int |psi|^{2n/(n-1)})^{1/n} equals (n/2) vol(S^n)^{1/n} at n = 4",
            1e-8, Rule::eq, [&] {
              BubbleParams q = BubbleParams::ground_state(4, cfg.lambda, RealVec::Zero(4));
              return std::pair(sobolev_quotient(q), sobolev_reference(4));
            });
    ctx.run("yamabe_invariant_n4",
            "flat Yamabe quotient equals n(n-1) vol(S^n)^{2/n} at n = 4",
            1e-6, Rule::eq, [&] {
              FunctionalReport r = yamabe_invariant_check(4, cfg.lambda);
              return std::pair(r.measured, r.reference);
            });
  }
  if (!has3) {
    ctx.run("yamabe_invariant_n3",
            "flat Yamabe quotient equals n(n-1) vol(S^n)^{2/n} at n = 3",
            1e-6, Rule::eq, [&] {
              FunctionalReport r = yamabe_invariant_check(3, cfg.lambda);
              return std::pair(r.measured, r.reference);
            });
  }
}

}  // namespace

Report run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  Report report;
  report.seed = cfg.seed;
  std::vector<int> dims = cfg.dimensions;
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  report.dimensions = dims;

  Ctx ctx(cfg);
  for (int n : dims) add_dimension_checks(ctx, n);
  add_global_checks(ctx);

  if (!ctx.overrides.empty())
    throw std::invalid_argument("unknown tolerance override: " +
                                ctx.overrides.begin()->first);

  std::sort(ctx.records.begin(), ctx.records.end(),
            [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
  report.records = std::move(ctx.records);
  return report;
}

std::string report_to_json(const Report& report, bool timings) {
  nlohmann::ordered_json j;
  j["schema_version"] = report.schema_version;
  j["seed"] = report.seed;
  j["dimensions"] = report.dimensions;
  j["summary"] = {{"records", report.records.size()},
                  {"passed", report.records.size() - report.failed()},
                  {"failed", report.failed()},
                  {"all_pass", report.all_pass()}};
  nlohmann::ordered_json recs = nlohmann::ordered_json::array();
  for (const CheckRecord& r : report.records) {
    nlohmann::ordered_json o;
    o["id"] = r.id;
    o["claim"] = r.claim;
    o["measured"] = r.measured;
    o["reference"] = r.reference;
    o["tolerance"] = r.tolerance;
    o["pass"] = r.pass;
    if (timings) o["runtime_ms"] = r.runtime_ms;
    recs.push_back(std::move(o));
  }
  j["records"] = std::move(recs);
  return j.dump(2) + "\n";
}

std::string profile_csv(const BubbleParams& p, double r_max, int samples) {
  if (samples < 2) throw std::invalid_argument("profile needs at least 2 samples");
  if (!(r_max > 0.0)) throw std::invalid_argument("profile needs r_max > 0");
  const int n = p.n;
  const double twosharp = crit_exp(n);
  auto density = [&](double r) { return std::pow(bubble_length(p, r), twosharp); };
  std::string out = "r,length,density,cumulative\n";
  char buf[128];
  double cum = 0.0, prev = 0.0;
  const double shell = sphere_volume(n - 1);
  for (int i = 0; i < samples; ++i) {
    double r = r_max * i / (samples - 1.0);
    if (i > 0) {
      cum += shell * integrate_adaptive(
                         [&](double s) { return std::pow(s, n - 1.0) * density(s); },
                         prev, r, 1e-10);
      prev = r;
    }
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r, bubble_length(p, r),
                  density(r), cum);
    out += buf;
  }
  return out;
}

}  // namespace cdirac
