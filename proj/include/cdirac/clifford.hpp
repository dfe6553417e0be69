#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace cdirac {

using complexd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Spinor = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

// Irreducible complex Clifford representation of R^n: n matrices of size
// N x N, N = 2^floor(n/2), satisfying
//
//   gamma_j gamma_k + gamma_k gamma_j = -2 delta_jk Id,   gamma_j^* = -gamma_j.
//
// Consequences used throughout: gamma(v)^2 = -|v|^2 Id and
// |gamma(v) s| = |v| |s| for every v in R^n, s in C^N.
struct CliffordRep {
  int n = 0;                  // vector-space dimension
  int N = 0;                  // spinor dimension, 2^floor(n/2)
  std::vector<Matrix> gamma;  // gamma[j], j = 0..n-1
};

// Spinor dimension 2^floor(n/2).
int spinor_rank(int n);

// Deterministic generator construction (iterated tensor products of fixed
// 2x2 blocks; odd dimensions append the normalized volume element).
// Throws std::invalid_argument unless 1 <= n <= 8.
CliffordRep build_rep(int n);

// gamma(v) s = sum_j v_j gamma_j s.  Dimension mismatches throw.
Spinor clifford_mul(const CliffordRep& rep, const RealVec& v, const Spinor& s);

// gamma(v) as a matrix.
Matrix clifford_matrix(const CliffordRep& rep, const RealVec& v);

// Max-norm defect over all generator pairs of the anticommutation relation
// and of skew-Hermiticity.  Exactly 0.0 for build_rep output.
double relation_defect(const CliffordRep& rep);

}  // namespace cdirac
