#include "cdirac/greenkernel.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cdirac {

namespace {

constexpr int kMaxIndex = 120;

void check_index(double tau, int k) {
  if (!(tau > 0.0)) throw std::invalid_argument("gegenbauer: weight tau must be positive");
  if (k < 0 || k > kMaxIndex) throw std::invalid_argument("gegenbauer: index out of range");
}

double gegenbauer_raw(double tau, int k, double t) {
  if (k == 0) return 1.0;
  double c0 = 1.0;
  double c1 = 2.0 * tau * t;
  for (int j = 2; j <= k; ++j) {
    const double c2 = (2.0 * t * (j + tau - 1.0) * c1 - (j + 2.0 * tau - 2.0) * c0) / j;
    c0 = c1;
    c1 = c2;
  }
  return c1;
}

}  // namespace

double gegenbauer(double tau, int k, double t) {
  check_index(tau, k);
  return gegenbauer_raw(tau, k, t);
}

double gegenbauer_derivative(double tau, int k, double t, int j) {
  check_index(tau, k);
  switch (j) {
    case 0: return gegenbauer_raw(tau, k, t);
    case 1: return k < 1 ? 0.0 : 2.0 * tau * gegenbauer_raw(tau + 1.0, k - 1, t);
    case 2: return k < 2 ? 0.0 : 4.0 * tau * (tau + 1.0) * gegenbauer_raw(tau + 2.0, k - 2, t);
    default: throw std::invalid_argument("gegenbauer_derivative: derivative order must be 0, 1 or 2");
  }
}

Matrix kernel_G(const CliffordRep& rep, const RealVec& d) {
  if (d.size() != rep.n) throw std::invalid_argument("kernel_G: dimension mismatch");
  const double r = d.norm();
  if (r <= 0.0) throw std::invalid_argument("kernel_G: kernel pole at d = 0");
  const double scale = 1.0 / (sphere_volume(rep.n - 1) * std::pow(r, rep.n));
  return scale * clifford_matrix(rep, d);
}

Matrix xi_matrix(const CliffordRep& rep, int k, const RealVec& x, const RealVec& y) {
  const int n = rep.n;
  if (n < 3) throw std::invalid_argument("xi_matrix: expansion requires dimension >= 3");
  if (x.size() != n || y.size() != n) throw std::invalid_argument("xi_matrix: dimension mismatch");
  const double ynorm = y.norm();
  if (ynorm <= 0.0) throw std::invalid_argument("xi_matrix: source direction must be nonzero");
  if (k < 0 || k > kMaxIndex) throw std::invalid_argument("xi_matrix: index out of range");

  const int N = rep.N;
  if (k == 0) return Matrix::Zero(N, N);

  const double tau = 0.5 * (n - 2);
  const RealVec yh = y / ynorm;
  const double r = x.norm();
  if (r == 0.0) {
    // degree k-1 homogeneous entries: only k = 1 survives at the origin
    if (k == 1) return Matrix(-clifford_matrix(rep, yh));
    return Matrix::Zero(N, N);
  }

  const double u = x.dot(yh) / r;
  const double ck = gegenbauer_raw(tau, k, u);
  const double dck = k < 1 ? 0.0 : 2.0 * tau * gegenbauer_raw(tau + 1.0, k - 1, u);

  // grad of H_k = r^k C_k(u):
  //   (k r^{k-2} C_k - r^{k-3} <x,yh> C_k') x + r^{k-1} C_k' yh
  const double ax = k * std::pow(r, k - 2) * ck - std::pow(r, k - 3) * x.dot(yh) * dck;
  const double ay = std::pow(r, k - 1) * dck;
  const double scale = 1.0 / (2.0 - n);
  return Matrix(scale * (ax * clifford_matrix(rep, x) + ay * clifford_matrix(rep, yh)));
}

Matrix series_expand_kernel(const CliffordRep& rep, const RealVec& x,
                            const RealVec& y, int K) {
  if (K < 0 || K > kMaxIndex) throw std::invalid_argument("series_expand_kernel: truncation out of range");
  const double ynorm = y.norm();
  if (!(x.norm() < ynorm)) throw std::invalid_argument("series_expand_kernel: requires |x| < |y|");
  const int n = rep.n;
  Matrix sum = Matrix::Zero(rep.N, rep.N);
  for (int k = 1; k <= K; ++k) {
    sum += std::pow(ynorm, -(n - 2.0 + k)) * xi_matrix(rep, k, x, y);
  }
  return Matrix(sum / sphere_volume(n - 1));
}

Spinor representation_reconstruct(const CliffordRep& rep, const SpinorEvaluator& f,
                                  const SpinorEvaluator& dirac_of_f, const RealVec& x,
                                  const SphereQuadrature& surface, int volume_res) {
  const int n = rep.n;
  if (x.size() != n) throw std::invalid_argument("representation_reconstruct: dimension mismatch");
  if (surface.dim != n - 1) throw std::invalid_argument("representation_reconstruct: surface quadrature dimension mismatch");
  if (!(x.norm() < 1.0)) throw std::invalid_argument("representation_reconstruct: point must be interior to the unit ball");

  Spinor out = Spinor::Zero(rep.N);
  for (size_t q = 0; q < surface.nodes.size(); ++q) {
    const RealVec& yq = surface.nodes[q];
    out += surface.weights[q] *
           (kernel_G(rep, RealVec(x - yq)) * clifford_mul(rep, yq, f(yq)));
  }

  if (dirac_of_f) {
    if (volume_res < 2) throw std::invalid_argument("representation_reconstruct: volume resolution too small");
    const double h = 2.0 / volume_res;
    const double cellw = std::pow(h, n);
    std::vector<int> idx(n, 0);
    RealVec c(n);
    bool done = false;
    while (!done) {
      for (int d = 0; d < n; ++d) c[d] = -1.0 + (idx[d] + 0.5) * h;
      const bool inside = c.norm() <= 1.0;
      const bool singular = (c - x).cwiseAbs().maxCoeff() <= 0.5 * h;
      if (inside && !singular) {
        out -= cellw * (kernel_G(rep, RealVec(x - c)) * dirac_of_f(c));
      }
      done = true;
      for (int d = n - 1; d >= 0; --d) {
        if (++idx[d] < volume_res) { done = false; break; }
        idx[d] = 0;
      }
    }
  }
  return out;
}

SpinorEvaluator harmonic_projection(const CliffordRep& rep, const SpinorEvaluator& boundary_psi,
                                    int k, const SphereQuadrature& surface) {
  if (surface.dim != rep.n - 1) throw std::invalid_argument("harmonic_projection: surface quadrature dimension mismatch");
  const double inv_vol = 1.0 / sphere_volume(rep.n - 1);
  // precompute w_q gamma(y_q) psi(y_q) / vol(S^{n-1})
  auto nodes = surface.nodes;
  std::vector<Spinor> moments(nodes.size());
  for (size_t q = 0; q < nodes.size(); ++q) {
    moments[q] = surface.weights[q] * inv_vol * clifford_mul(rep, nodes[q], boundary_psi(nodes[q]));
  }
  return [rep, k, nodes = std::move(nodes), moments = std::move(moments)](const RealVec& x) {
    Spinor acc = Spinor::Zero(rep.N);
    for (size_t q = 0; q < nodes.size(); ++q) {
      acc += xi_matrix(rep, k, x, nodes[q]) * moments[q];
    }
    return acc;
  };
}

}  // namespace cdirac
