#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace cdirac {

using RealVec = Eigen::VectorXd;

// Uniform tensor grid on [-L, L]^n with m nodes per axis (m odd so the
// origin is a node); node coordinates are exactly x_i = -L + i * h with
// h = 2L / (m - 1).
struct Grid {
  int n = 0;
  double L = 0.0;
  int m = 0;

  Grid() = default;
  Grid(int n_, double L_, int m_);

  double h() const { return 2.0 * L / (m - 1); }
  double node(int i) const { return -L + i * h(); }
  long total_nodes() const;
};

// Volume of the unit m-sphere S^m in R^{m+1}: 2 pi^{(m+1)/2} / Gamma((m+1)/2).
double sphere_volume(int m);

// Inverse stereographic projection from the north pole:
//   y_i = 2 x_i / (1 + |x|^2),  y_{n+1} = (|x|^2 - 1) / (|x|^2 + 1).
RealVec stereo_to_sphere(const RealVec& x);

// Forward chart, the exact inverse of stereo_to_sphere:
//   x_i = y_i / (1 - y_{n+1}).
// Throws for the north pole (y_{n+1} = 1).
RealVec stereo_to_plane(const RealVec& y);

// Conformal factor of the round-metric pullback: |d pi(v)| = f(x) |v| with
// f(x) = 2 / (1 + |x|^2).
double conformal_factor(const RealVec& x);

// Quadrature rule on the unit sphere S^dim, exact for polynomials of total
// degree <= order.  dim = 1: equally spaced nodes; dim = 2: Gauss-Legendre
// in the polar cosine x uniform azimuth; dim = 3: Gauss-Chebyshev (second
// kind) x Gauss-Legendre x uniform azimuth.
struct SphereQuadrature {
  int dim = 0;
  int order = 0;
  std::vector<RealVec> nodes;    // points on S^dim in R^{dim+1}
  std::vector<double> weights;   // positive, summing to sphere_volume(dim)
};

SphereQuadrature sphere_quadrature(int dim, int order);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int k, std::vector<double>& nodes, std::vector<double>& weights);

// Adaptive Gauss-Kronrod integral of f over [a, b] to relative tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-12);

// Integral over R^n of the radial profile f(|x|):
//   vol(S^{n-1}) * int_0^inf r^{n-1} f(r) dr,
// evaluated on the compactified variable r = tan(theta).  Throws
// std::runtime_error when the tail fails the decay estimate or the
// subdivision does not converge.
double radial_integral(const std::function<double(double)>& f, int n,
                       double rel_tol = 1e-10);

}  // namespace cdirac
