#pragma once

#include <functional>

#include "cdirac/clifford.hpp"
#include "cdirac/geometry.hpp"

namespace cdirac {

using SpinorEvaluator = std::function<Spinor(const RealVec&)>;

// Gegenbauer polynomial C_k^tau(t) by the stable forward recurrence
//   k C_k = 2 t (k + tau - 1) C_{k-1} - (k + 2 tau - 2) C_{k-2}.
// Requires tau > 0 and 0 <= k <= 120.
double gegenbauer(double tau, int k, double t);

// j-th t-derivative, j in {0, 1, 2}, via the index shift
// d/dt C_k^tau = 2 tau C_{k-1}^{tau+1}.
double gegenbauer_derivative(double tau, int k, double t, int j);

// Green kernel of the Dirac operator on R^n:
//   G(d) = gamma(d) / (vol(S^{n-1}) |d|^n),  d != 0.
Matrix kernel_G(const CliffordRep& rep, const RealVec& d);

// k-th matrix term of the kernel expansion: with tau = (n-2)/2 and the
// zonal solid harmonic H_k(x; y/|y|) = |x|^k C_k^tau(<x,y>/(|x||y|)),
//
//   Xi_k(x, y) = (2-n)^{-1} D_x H_k,
//
// normalized so that G(x - y) = vol(S^{n-1})^{-1} sum_k |y|^{-(n-2+k)} Xi_k.
// Entries are homogeneous harmonic polynomials in x of degree k - 1 and the
// columns are D_x-harmonic.  Requires n >= 3.
Matrix xi_matrix(const CliffordRep& rep, int k, const RealVec& x, const RealVec& y);

// Partial sum over k <= K of the expansion above; converges to
// kernel_G(x - y) for |x| < |y| (which is required).
Matrix series_expand_kernel(const CliffordRep& rep, const RealVec& x,
                            const RealVec& y, int K);

// Green representation on the unit ball,
//   psi(x) = int_{dB_1} G(x-y) gamma(y) psi(y) dS(y)
//          - int_{B_1}  G(x-y) (D psi)(y) dy,
// with the boundary term from `surface` quadrature and the volume term from
// a midpoint rule with volume_res cells per axis, the cell containing x
// excluded.  Pass an empty `dirac_of_f` for D-harmonic fields (the volume
// term is skipped).  Requires |x| < 1.
Spinor representation_reconstruct(const CliffordRep& rep, const SpinorEvaluator& f,
                                  const SpinorEvaluator& dirac_of_f, const RealVec& x,
                                  const SphereQuadrature& surface, int volume_res);

// Degree-(k-1) boundary harmonic projection
//   Q_k(x) = vol(S^{n-1})^{-1} int_{dB_1} Xi_k(x, y) gamma(y) psi(y) dS(y);
// D Q_k = 0 identically, and a D-harmonic field with homogeneous degree d
// components is reproduced by Q_{d+1} alone.
SpinorEvaluator harmonic_projection(const CliffordRep& rep, const SpinorEvaluator& boundary_psi,
                                    int k, const SphereQuadrature& surface);

}  // namespace cdirac
