#include "cdirac/clifford.hpp"

#include <stdexcept>

namespace cdirac {

namespace {

const complexd I{0.0, 1.0};

Matrix pauli(int k) {
  Matrix m(2, 2);
  switch (k) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      m.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return m;
}

// Generators for even n, by induction in steps of two:
// gamma_j -> gamma_j (x) sigma_3, then append Id (x) i sigma_1, Id (x) i sigma_2.
std::vector<Matrix> even_generators(int n) {
  std::vector<Matrix> g;
  g.push_back(I * pauli(1));
  g.push_back(I * pauli(2));
  for (int dim = 4; dim <= n; dim += 2) {
    const Matrix id = Matrix::Identity(g[0].rows(), g[0].cols());
    std::vector<Matrix> next;
    next.reserve(dim);
    for (const Matrix& gj : g) next.push_back(kron(gj, pauli(3)));
    next.push_back(kron(id, I * pauli(1)));
    next.push_back(kron(id, I * pauli(2)));
    g = std::move(next);
  }
  return g;
}

}  // namespace

int spinor_rank(int n) {
  if (n < 1) throw std::invalid_argument("spinor_rank: dimension must be >= 1");
  return 1 << (n / 2);
}

CliffordRep build_rep(int n) {
  if (n < 1 || n > 8) throw std::invalid_argument("build_rep: supported dimensions are 1..8");
  CliffordRep rep;
  rep.n = n;
  rep.N = spinor_rank(n);
  if (n == 1) {
    Matrix g(1, 1);
    g << I;
    rep.gamma.push_back(g);
    return rep;
  }
  const int even = (n % 2 == 0) ? n : n - 1;
  rep.gamma = even_generators(even);
  if (n % 2 == 1) {
    // Volume element of the even part anticommutes with every generator.
    // P^2 = (-1)^m Id for even = 2m, so scale by i when m is even to get
    // square -Id; the same scale keeps it skew-Hermitian.
    Matrix p = rep.gamma[0];
    for (int j = 1; j < even; ++j) p = p * rep.gamma[j];
    const int m = even / 2;
    rep.gamma.push_back(m % 2 == 0 ? Matrix(I * p) : p);
  }
  return rep;
}

Spinor clifford_mul(const CliffordRep& rep, const RealVec& v, const Spinor& s) {
  if (v.size() != rep.n) throw std::invalid_argument("clifford_mul: vector dimension mismatch");
  if (s.size() != rep.N) throw std::invalid_argument("clifford_mul: spinor dimension mismatch");
  Spinor out = Spinor::Zero(rep.N);
  for (int j = 0; j < rep.n; ++j)
    if (v[j] != 0.0) out += v[j] * (rep.gamma[j] * s);
  return out;
}

Matrix clifford_matrix(const CliffordRep& rep, const RealVec& v) {
  if (v.size() != rep.n) throw std::invalid_argument("clifford_matrix: vector dimension mismatch");
  Matrix out = Matrix::Zero(rep.N, rep.N);
  for (int j = 0; j < rep.n; ++j) out += v[j] * rep.gamma[j];
  return out;
}

double relation_defect(const CliffordRep& rep) {
  const Matrix id = Matrix::Identity(rep.N, rep.N);
  double defect = 0.0;
  for (int j = 0; j < rep.n; ++j) {
    defect = std::max(defect,
                      (rep.gamma[j] + rep.gamma[j].adjoint()).cwiseAbs().maxCoeff());
    for (int k = 0; k < rep.n; ++k) {
      const Matrix anti = rep.gamma[j] * rep.gamma[k] + rep.gamma[k] * rep.gamma[j];
      const Matrix target = (j == k) ? Matrix(-2.0 * id) : Matrix(Matrix::Zero(rep.N, rep.N));
      defect = std::max(defect, (anti - target).cwiseAbs().maxCoeff());
    }
  }
  return defect;
}

}  // namespace cdirac
