#include "cdirac/functionals.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace cdirac {

namespace {

double two_sharp(int n) { return 2.0 * n / (n - 1.0); }

void require_n3(int n, const char* who) {
  if (n < 3) throw std::invalid_argument(std::string(who) + ": requires dimension >= 3");
}

}  // namespace

double action_reference(int n) {
  return critical_mass_reference(n) / (2.0 * n);
}

double critical_mass_reference(int n) {
  return std::pow(0.5 * n, n) * sphere_volume(n);
}

double critical_mass(const BubbleParams& p, double rel_tol) {
  const double q = two_sharp(p.n);
  return radial_integral([&](double r) { return std::pow(bubble_length(p, r), q); },
                         p.n, rel_tol);
}

double action(const BubbleParams& p, double rel_tol) {
  return critical_mass(p, rel_tol) / (2.0 * p.n);
}

BoundVerdict lower_bound_check(double value, int n, double rel_tol) {
  BoundVerdict v;
  v.bound = action_reference(n);
  v.above_bound = value >= v.bound * (1.0 - rel_tol);
  v.ground_state = std::abs(value - v.bound) <= v.bound * rel_tol;
  return v;
}

double sobolev_reference(int n) {
  return 0.5 * n * std::pow(sphere_volume(n), 1.0 / n);
}

double sobolev_quotient(const BubbleParams& p, double rel_tol) {
  return std::pow(critical_mass(p, rel_tol), 1.0 / p.n);
}

double sobolev_quotient_of_profile(const std::function<double(double)>& length,
                                   int n, double rel_tol) {
  const double q = two_sharp(n);
  const double mass =
      radial_integral([&](double r) { return std::pow(length(r), q); }, n, rel_tol);
  return std::pow(mass, 1.0 / n);
}

double talenti_profile(int n, double lambda, const RealVec& x0, const RealVec& x) {
  require_n3(n, "talenti_profile");
  const double d2 = (x - x0).squaredNorm();
  return std::pow(2.0 * lambda / (lambda * lambda + d2), 0.5 * (n - 2));
}

double yamabe_residual(int n, double lambda, const RealVec& x0, const Grid& grid,
                       const DerivativeStencil& st) {
  require_n3(n, "yamabe_residual");
  if (grid.n != n || x0.size() != n) throw std::invalid_argument("yamabe_residual: dimension mismatch");
  const double cn = 4.0 * (n - 1.0) / (n - 2.0);
  const double expo = (n + 2.0) / (n - 2.0);
  const double scal = n * (n - 1.0);
  return scalar_pde_residual(
      [&](const RealVec& x) { return talenti_profile(n, lambda, x0, x); },
      [&](const RealVec&, double u) { return scal * std::pow(u, expo); },
      cn, grid, st, x0);
}

double length_coupling_check(const BubbleParams& p, int samples, std::uint64_t seed) {
  require_n3(p.n, "length_coupling_check");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const double hexp = (p.n - 2.0) / (p.n - 1.0);
  const double hpref = std::pow(2.0 / p.n, 0.5 * (p.n - 2));
  double gap = 0.0;
  RealVec x(p.n);
  for (int t = 0; t < samples; ++t) {
    for (int d = 0; d < p.n; ++d) x[d] = u(rng);
    const double trace = sphere_trace_length(p, stereo_to_sphere(x));
    const double h = hpref * std::pow(trace, hexp);
    const double uu = std::pow(conformal_factor(x), 0.5 * (p.n - 2)) * h;
    const double ref = talenti_profile(p.n, p.lambda, p.center, x);
    gap = std::max(gap, std::abs(uu - ref) / ref);
  }
  return gap;
}

double liouville_residual(double lambda, const RealVec& z0, const Grid& grid,
                          const DerivativeStencil& st) {
  if (grid.n != 2 || z0.size() != 2) throw std::invalid_argument("liouville_residual: planar problem only");
  const auto v = [&](const RealVec& z) {
    const double d2 = (z - z0).squaredNorm();
    const double denom = 4.0 + lambda * lambda * d2;
    return 0.5 * std::log(32.0 * lambda * lambda / (denom * denom)) - 0.5 * std::log(2.0);
  };
  return scalar_pde_residual(
      v, [](const RealVec&, double vv) { return std::exp(2.0 * vv); }, 1.0, grid, st, z0);
}

double liouville_total_curvature(double lambda, double rel_tol) {
  return radial_integral(
      [&](double r) {
        const double denom = 4.0 + lambda * lambda * r * r;
        return 16.0 * lambda * lambda / (denom * denom);
      },
      2, rel_tol);
}

double yamabe_reference(int n) {
  return n * (n - 1.0) * std::pow(sphere_volume(n), 2.0 / n);
}

FunctionalReport yamabe_invariant_check(int n, double lambda, double rel_tol) {
  require_n3(n, "yamabe_invariant_check");
  const double cn = 4.0 * (n - 1.0) / (n - 2.0);
  const double pref = std::pow(2.0 * lambda, 0.5 * (n - 2));
  // |grad u|(r) = (n-2) r (2 lambda)^{(n-2)/2} (lambda^2 + r^2)^{-n/2}
  const double num = cn * radial_integral(
                              [&](double r) {
                                const double g = (n - 2.0) * r * pref *
                                                 std::pow(lambda * lambda + r * r, -0.5 * n);
                                return g * g;
                              },
                              n, rel_tol);
  const double den = radial_integral(
      [&](double r) {
        return std::pow(2.0 * lambda / (lambda * lambda + r * r), n);
      },
      n, rel_tol);
  FunctionalReport rep;
  rep.name = "yamabe_invariant";
  rep.measured = num / std::pow(den, (n - 2.0) / n);
  rep.reference = yamabe_reference(n);
  rep.rel_error = std::abs(rep.measured - rep.reference) / rep.reference;
  return rep;
}

}  // namespace cdirac
