// Test-only reference values and independently derived closed forms used as
// oracles.  Everything here is computed from first principles (gamma
// functions, hand-differentiated profiles), not from the library under test.
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Unit-sphere volumes: vol(S^1) = 2 pi, vol(S^2) = 4 pi, vol(S^3) = 2 pi^2,
// vol(S^4) = 8 pi^2 / 3.
inline double sphere_volume(int m) {
  return 2.0 * std::pow(kPi, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

// int_{S^{d-1}} y_1^{a_1} ... y_d^{a_d} dS for non-negative even exponents;
// zero when any exponent is odd.
inline double sphere_monomial_moment(const std::vector<int>& a) {
  double sum = 0.0;
  double num = 2.0;
  for (int ai : a) {
    if (ai % 2 == 1) return 0.0;
    num *= std::tgamma(0.5 * (ai + 1));
    sum += 0.5 * (ai + 1);
  }
  return num / std::tgamma(sum);
}

// Flat bubble length profile (nl / (l^2 + r^2))^{(n-1)/2}, derived by hand
// from |(1 - gamma(v)) Phi|^2 = (1 + |v|^2) |Phi|^2.
inline double bubble_length(int n, double lambda, double r) {
  return std::pow(n * lambda / (lambda * lambda + r * r), 0.5 * (n - 1));
}

// exact on-shell action (1/2n) (n/2)^n vol(S^n)
inline double action_value(int n) {
  return std::pow(0.5 * n, n) * sphere_volume(n) / (2.0 * n);
}

// L^{2#} mass of the ground-state family: (n/2)^n vol(S^n).
inline double critical_mass(int n) {
  return std::pow(0.5 * n, n) * sphere_volume(n);
}

inline double sobolev_reference(int n) {
  return 0.5 * n * std::pow(sphere_volume(n), 1.0 / n);
}

inline double yamabe_reference(int n) {
  return n * (n - 1.0) * std::pow(sphere_volume(n), 2.0 / n);
}

// Aubin-Talenti profile (2l / (l^2 + |x - x0|^2))^{(n-2)/2}.
inline double talenti(int n, double lambda, const Eigen::VectorXd& x0,
                      const Eigen::VectorXd& x) {
  const double d2 = (x - x0).squaredNorm();
  return std::pow(2.0 * lambda / (lambda * lambda + d2), 0.5 * (n - 2));
}

// Deterministic samplers.
inline Eigen::VectorXd random_point(std::mt19937_64& rng, int dim, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::VectorXd x(dim);
  for (int i = 0; i < dim; ++i) x[i] = u(rng);
  return x;
}

inline Eigen::VectorXd random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd x(dim);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < dim; ++i) x[i] = g(rng);
    norm2 = x.squaredNorm();
  } while (norm2 < 1e-12);
  return x / std::sqrt(norm2);
}

inline Eigen::VectorXcd random_spinor(std::mt19937_64& rng, int N) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXcd s(N);
  for (int i = 0; i < N; ++i) s[i] = std::complex<double>(u(rng), u(rng));
  return s;
}

}  // namespace oracle
