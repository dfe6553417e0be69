#pragma once

#include <functional>
#include <span>

#include "cdirac/clifford.hpp"
#include "cdirac/geometry.hpp"

namespace cdirac {

// Parameters of the ground-state (bubble) family
//
//   psi(x) = lambda^{-(n-1)/2} (2 / (1 + |z|^2))^{n/2} (1 - gamma(z)) Phi0,
//   z = (x - center) / lambda,
//
// the scaling that preserves the equation D psi = |psi|^{2/(n-1)} psi
// exactly for every lambda.  Ground states carry the amplitude norm
// |Phi0| = (1/sqrt(2)) (n/2)^{(n-1)/2}; the raw constructor admits other
// amplitudes so corrupted inputs can be modelled and detected.
struct BubbleParams {
  int n = 0;
  double lambda = 1.0;
  RealVec center;
  Spinor amplitude;  // Phi0

  static BubbleParams ground_state(int n, double lambda, const RealVec& center);
  bool normalized(double tol = 1e-12) const;
};

// |Phi0| for the ground-state family: (1/sqrt 2) (n/2)^{(n-1)/2}.
double ground_state_amplitude_norm(int n);

// Field evaluation at a point.  rep must be the dimension-n representation.
Spinor bubble_eval(const CliffordRep& rep, const BubbleParams& p, const RealVec& x);

// Exact gradient: partial_j of the bubble field (closed form, used by
// calculus convergence tests as well as the library itself has no need of
// finite differences here).
Spinor bubble_partial(const CliffordRep& rep, const BubbleParams& p, const RealVec& x, int j);

// |psi| at radius r from the center.  Equals
// (n lambda / (lambda^2 + r^2))^{(n-1)/2} for normalized amplitudes; general
// amplitudes scale this by |Phi0| / |Phi0_ground|.
double bubble_length(const BubbleParams& p, double r);

// Limit of r^{n-1} |psi| as r -> infinity.
double bubble_decay_limit(const BubbleParams& p);

// Conformal translation t and dilation mu acting on parameters:
// the transformed field is mu^{-(n-1)/2} psi((x - t)/mu).
BubbleParams mobius_transform(const BubbleParams& p, const RealVec& shift, double scale);

// Ambient twistor spinor Psi(x) = gamma(x) Phi on R^{rep.n}.
Spinor ambient_twistor_eval(const CliffordRep& rep, const Spinor& phi, const RealVec& x);

// Length of the conformally weighted sphere trace
//   phi(y) = (1 / (1 - y_{n+1}))^{(n-1)/2} psi(stereo_to_plane(y)),
// constant (n/2)^{(n-1)/2} exactly when (lambda, center) = (1, 0).
double sphere_trace_length(const BubbleParams& p, const RealVec& y);

// Closed-form field with exact directional derivatives, the input to the
// Killing/Penrose defect measurements.
struct AmbientField {
  int dim = 0;
  std::function<Spinor(const RealVec&)> eval;
  // derivative of the field at x in the coordinate direction j
  std::function<Spinor(const RealVec&, int)> partial;
};

AmbientField twistor_field(const CliffordRep& rep, const Spinor& phi);
AmbientField constant_field(const CliffordRep& rep, const Spinor& phi);
// |x|^2 Phi, a deliberately non-twistor comparison field.
AmbientField radial_square_field(const CliffordRep& rep, const Spinor& phi);

// max over sample points and coordinate directions of |P psi| where
//   P_j psi = partial_j psi + (1/dim) gamma_j D psi
// is the Penrose operator assembled from the field's exact derivatives.
double killing_defect(const AmbientField& field, const CliffordRep& rep,
                      std::span<const RealVec> samples);

// Dirac operator D psi = sum_j gamma_j partial_j psi from exact derivatives.
Spinor dirac_exact(const AmbientField& field, const CliffordRep& rep, const RealVec& x);

// A spinor field given by an evaluation rule together with its declared
// decay rate |psi| ~ r^{-decay} along rays.
struct SpinorField {
  int n = 0;
  int N = 0;
  std::function<Spinor(const RealVec&)> eval;
  double decay_exponent = 0.0;
};

SpinorField bubble_field(const CliffordRep& rep, const BubbleParams& p);

// Log-log slope of |psi| along the ray through `dir` between radii r0 and r1;
// for fields with exact power decay this approaches -decay_exponent.
double measured_decay_slope(const SpinorField& f, const RealVec& dir, double r0, double r1);

}  // namespace cdirac
