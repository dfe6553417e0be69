#pragma once

#include <functional>
#include <string>

#include "cdirac/calculus.hpp"
#include "cdirac/fields.hpp"

namespace cdirac {

struct FunctionalReport {
  std::string name;
  double measured = 0.0;
  double reference = 0.0;
  double rel_error = 0.0;
};

// On-shell action (1/2n) int |psi|^{2n/(n-1)} dx of the bubble family,
// evaluated by radial quadrature of the closed-form length profile.  The
// reference value is (1/2n) (n/2)^n vol(S^n).
double action(const BubbleParams& p, double rel_tol = 1e-10);

double action_reference(int n);

// L^{2#} mass int |psi|^{2n/(n-1)} dx and its reference (n/2)^n vol(S^n).
double critical_mass(const BubbleParams& p, double rel_tol = 1e-10);
double critical_mass_reference(int n);

struct BoundVerdict {
  double bound = 0.0;        // (1/2n) (n/2)^n vol(S^n)
  bool above_bound = false;  // value >= bound - tol
  bool ground_state = false; // |value - bound| <= tol
};

// Compare an action value against the sharp lower bound.
BoundVerdict lower_bound_check(double value, int n, double rel_tol = 1e-8);

// Conformal quotient (int |psi|^{2n/(n-1)})^{1/n}; equals (n/2) vol(S^n)^{1/n}
// on the ground-state family.
double sobolev_quotient(const BubbleParams& p, double rel_tol = 1e-10);
// Same quotient for an arbitrary radial length profile.
double sobolev_quotient_of_profile(const std::function<double(double)>& length,
                                   int n, double rel_tol = 1e-10);
double sobolev_reference(int n);

// Aubin-Talenti profile (2 lambda / (lambda^2 + |x - x0|^2))^{(n-2)/2}.
double talenti_profile(int n, double lambda, const RealVec& x0, const RealVec& x);

// Collocation residual of -c_n lap(u) = n(n-1) u^{(n+2)/(n-2)} at the
// Talenti bubble, c_n = 4(n-1)/(n-2), on `grid` translated to x0;
// normalized by sup |rhs|.
double yamabe_residual(int n, double lambda, const RealVec& x0, const Grid& grid,
                       const DerivativeStencil& st);

// Max relative gap over sampled points between the spinor length coupling
//   u = (2/(1+|x|^2))^{(n-2)/2} (2/n)^{(n-2)/2} |phi(pi(x))|^{(n-2)/(n-1)}
// (phi the weighted sphere trace of the bubble) and the Talenti profile.
double length_coupling_check(const BubbleParams& p, int samples, std::uint64_t seed);

// Collocation residual of the Liouville equation -lap(v) = e^{2v} at
//   v(z) = (1/2) log(32 lambda^2 / (4 + lambda^2 |z - z0|^2)^2) - (1/2) log 2.
double liouville_residual(double lambda, const RealVec& z0, const Grid& grid,
                          const DerivativeStencil& st);

// int_{R^2} e^{2v} dz (= 4 pi for every lambda).
double liouville_total_curvature(double lambda, double rel_tol = 1e-10);

// Flat-space Yamabe quotient int c_n |grad u|^2 / (int u^{2n/(n-2)})^{(n-2)/n}
// at the Talenti bubble, against the reference n(n-1) vol(S^n)^{2/n}.
FunctionalReport yamabe_invariant_check(int n, double lambda = 1.0, double rel_tol = 1e-10);
double yamabe_reference(int n);

}  // namespace cdirac
