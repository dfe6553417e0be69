#pragma once

#include <functional>
#include <vector>

#include "cdirac/clifford.hpp"
#include "cdirac/fields.hpp"
#include "cdirac/geometry.hpp"

namespace cdirac {

// Central finite-difference stencil of order 2 or 4.  Coefficients are
// stored over the offsets -radius..radius and divided by h (first
// derivative) or h^2 (second derivative) at application time; they
// differentiate polynomials up to the stated degree exactly.
struct DerivativeStencil {
  int order = 0;
  int radius = 0;
  std::vector<double> d1;  // first-derivative weights
  std::vector<double> d2;  // second-derivative weights

  static DerivativeStencil central(int order);
};

// Spinor (or scalar, N = 1) samples over a Grid, node-major storage with the
// component index fastest.  Nodes are visited in row-major order with the
// last axis contiguous.
struct GridField {
  Grid grid;
  int N = 1;
  std::vector<complexd> values;

  GridField() = default;
  GridField(const Grid& g, int N_);

  long stride(int axis) const;
  Spinor at(long node) const;
  void set(long node, const Spinor& s);
};

// Sample a pointwise evaluator over grid nodes shifted by `offset` (the grid
// box is [-L, L]^n + offset).
GridField sample_field(const Grid& grid, int N,
                       const std::function<Spinor(const RealVec&)>& eval,
                       const RealVec& offset);

// The sub-grid reachable by a stencil of the given radius: same spacing,
// m' = m - 2 radius.  Throws when the result would be smaller than a Grid
// allows.
Grid interior_grid(const Grid& grid, int radius);

// All first partials on the interior grid.
std::vector<GridField> fd_partials(const GridField& f, const DerivativeStencil& st);

// D psi = sum_j gamma_j partial_j psi on the interior grid.
GridField dirac_apply(const GridField& f, const CliffordRep& rep, const DerivativeStencil& st);

// Penrose operator P_j psi = partial_j psi + (1/n) gamma_j D psi on the
// interior grid, one field per direction.
std::vector<GridField> penrose_apply(const GridField& f, const CliffordRep& rep,
                                     const DerivativeStencil& st);

// Max over interior nodes of the relative defect of the pointwise
// decomposition |grad psi|^2 = |P psi|^2 + (1/n) |D psi|^2, an algebraic
// identity of the discrete partials.
double penrose_dirac_gap(const GridField& f, const CliffordRep& rep,
                         const DerivativeStencil& st);

struct ResidualNorms {
  double sup_rel = 0.0;
  double l2_rel = 0.0;
};

// Collocation residual D psi - |psi|^{2/(n-1)} psi of the bubble family over
// the interior nodes of `grid` translated to the bubble center, normalized
// by the same norm of D psi.  The nonlinear power is evaluated via log-exp
// with |psi| = 0 mapped to 0.
ResidualNorms nonlinear_residual(const CliffordRep& rep, const BubbleParams& p,
                                 const Grid& grid, const DerivativeStencil& st);

// Streaming sup-norm residual of -c lap(u) - rhs(x, u) over interior nodes of
// `grid` translated by `offset`, normalized by the sup of |rhs|; used by the
// scalar curvature equations.
double scalar_pde_residual(const std::function<double(const RealVec&)>& u,
                           const std::function<double(const RealVec&, double)>& rhs,
                           double c, const Grid& grid, const DerivativeStencil& st,
                           const RealVec& offset);

}  // namespace cdirac
