#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "cdirac/calculus.hpp"
#include "cdirac/clifford.hpp"
#include "cdirac/fields.hpp"
#include "cdirac/functionals.hpp"
#include "cdirac/greenkernel.hpp"
#include "cdirac/suite.hpp"

namespace {

using namespace cdirac;

int cmd_verify(const std::string& config_path, const std::string& out_path, bool timings) {
  SuiteConfig cfg = config_path.empty() ? SuiteConfig{} : SuiteConfig::from_file(config_path);
  if (timings) cfg.timings = true;
  if (const char* env = std::getenv("CDIRAC_SEED")) {
    char* end = nullptr;
    unsigned long long s = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
      throw std::invalid_argument("invalid CDIRAC_SEED: " + std::string(env));
    cfg.seed = s;
  }

  Report report = run_suite(cfg);
  for (const CheckRecord& r : report.records) {
    std::printf("[%s] %-32s measured=%-14.6g reference=%-14.6g tol=%-9.3g",
                r.pass ? "PASS" : "FAIL", r.id.c_str(), r.measured, r.reference,
                r.tolerance);
    if (cfg.timings) std::printf("  (%.1f ms)", r.runtime_ms);
    std::printf("\n");
  }
  std::printf("suite: %zu/%zu checks passed (seed %llu)\n",
              report.records.size() - report.failed(), report.records.size(),
              static_cast<unsigned long long>(report.seed));

  std::string dest = out_path.empty() ? cfg.report_path : out_path;
  if (!dest.empty()) {
    std::ofstream out(dest, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write report: " + dest);
    out << report_to_json(report, cfg.timings);
    std::printf("report written to %s\n", dest.c_str());
  }
  return report.all_pass() ? 0 : 1;
}

int cmd_residual(int n, double lambda, double L, int m, int order, double tol) {
  CliffordRep rep = build_rep(n);
  BubbleParams p = BubbleParams::ground_state(n, lambda, RealVec::Zero(n));
  DerivativeStencil st = DerivativeStencil::central(order);
  ResidualNorms r = nonlinear_residual(rep, p, Grid(n, L * lambda, m), st);
  std::printf("n=%d lambda=%g grid m=%d h=%g: sup_rel=%.6g l2_rel=%.6g (tol %.3g)\n", n,
              lambda, m, Grid(n, L * lambda, m).h(), r.sup_rel, r.l2_rel, tol);
  return r.sup_rel <= tol ? 0 : 1;
}

int cmd_action(int n, double lambda, double tol) {
  BubbleParams p = BubbleParams::ground_state(n, lambda, RealVec::Zero(n));
  double measured = action(p);
  double reference = action_reference(n);
  double rel = std::abs(measured / reference - 1.0);
  std::printf("n=%d lambda=%g: action=%.15g reference=%.15g rel_error=%.3g\n", n, lambda,
              measured, reference, rel);
  return rel <= tol ? 0 : 1;
}

int cmd_kernel(int n, double ratio, int K, double tol) {
  CliffordRep rep = build_rep(n);
  std::mt19937_64 g(4059);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto unit = [&] {
    RealVec v(n);
    for (int i = 0; i < n; ++i) v[i] = gauss(g);
    return RealVec(v / v.norm());
  };
  double worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    RealVec x = ratio * unit(), y = unit();
    Matrix s = series_expand_kernel(rep, x, y, K);
    Matrix ref = kernel_G(rep, RealVec(x - y));
    worst = std::max(worst, (s - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff());
  }
  std::printf("n=%d |x|/|y|=%g K=%d: max relative error %.6g (tol %.3g)\n", n, ratio, K,
              worst, tol);
  return worst <= tol ? 0 : 1;
}

int cmd_profile(int n, double lambda, double rmax, int samples, const std::string& out_path) {
  BubbleParams p = BubbleParams::ground_state(n, lambda, RealVec::Zero(n));
  std::string csv = profile_csv(p, rmax, samples);
  if (out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write profile: " + out_path);
    out << csv;
    std::printf("profile written to %s\n", out_path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for the critical nonlinear Dirac equation"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  bool timings = false;
  CLI::App* verify = app.add_subcommand("verify", "run the full check suite");
  verify->add_option("--config", config_path, "suite configuration file");
  verify->add_option("--out", out_path, "JSON report destination");
  verify->add_flag("--timings", timings, "include per-check runtimes in the report");

  int r_n = 3, r_m = 81, r_order = 2;
  double r_lambda = 1.0, r_L = 4.0, r_tol = 5e-3;
  CLI::App* residual = app.add_subcommand("residual", "collocation residual of the bubble");
  residual->add_option("--n", r_n, "dimension")->check(CLI::Range(2, 4));
  residual->add_option("--lambda", r_lambda, "concentration scale")->check(CLI::PositiveNumber);
  residual->add_option("--L", r_L, "box half-width in units of lambda")->check(CLI::PositiveNumber);
  residual->add_option("--m", r_m, "grid nodes per axis");
  residual->add_option("--order", r_order, "stencil order")->check(CLI::IsMember({2, 4}));
  residual->add_option("--tol", r_tol, "pass threshold on sup_rel");

  int a_n = 3;
  double a_lambda = 1.0, a_tol = 1e-8;
  CLI::App* act = app.add_subcommand("action", "action of the bubble family");
  act->add_option("--n", a_n, "dimension")->check(CLI::Range(2, 4));
  act->add_option("--lambda", a_lambda, "concentration scale")->check(CLI::PositiveNumber);
  act->add_option("--tol", a_tol, "pass threshold on the relative error");

  int k_n = 3, k_K = 60;
  double k_ratio = 0.3, k_tol = 1e-10;
  CLI::App* kernel = app.add_subcommand("kernel", "Green-kernel series vs closed form");
  kernel->add_option("--n", k_n, "dimension")->check(CLI::Range(3, 4));
  kernel->add_option("--ratio", k_ratio, "|x| / |y|")->check(CLI::Range(0.0, 0.95));
  kernel->add_option("--K", k_K, "series truncation")->check(CLI::Range(1, 120));
  kernel->add_option("--tol", k_tol, "pass threshold on the relative error");

  int p_n = 3, p_samples = 200;
  double p_lambda = 1.0, p_rmax = 1000.0;
  std::string p_out;
  CLI::App* profile = app.add_subcommand("profile", "radial profile CSV of the bubble");
  profile->add_option("--n", p_n, "dimension")->check(CLI::Range(2, 4));
  profile->add_option("--lambda", p_lambda, "concentration scale")->check(CLI::PositiveNumber);
  profile->add_option("--rmax", p_rmax, "last radius")->check(CLI::PositiveNumber);
  profile->add_option("--samples", p_samples, "row count");
  profile->add_option("--out", p_out, "CSV destination (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(config_path, out_path, timings);
    if (residual->parsed()) return cmd_residual(r_n, r_lambda, r_L, r_m, r_order, r_tol);
    if (act->parsed()) return cmd_action(a_n, a_lambda, a_tol);
    if (kernel->parsed()) return cmd_kernel(k_n, k_ratio, k_K, k_tol);
    if (profile->parsed()) return cmd_profile(p_n, p_lambda, p_rmax, p_samples, p_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
