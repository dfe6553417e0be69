#include "cdirac/calculus.hpp"

#include <cmath>
#include <stdexcept>

namespace cdirac {

namespace {

// Odometer over an n-dimensional index box [lo, hi) per axis.
struct BoxIter {
  std::vector<int> idx;
  int lo, hi;
  bool done = false;

  BoxIter(int n, int lo_, int hi_) : idx(n, lo_), lo(lo_), hi(hi_) {
    if (hi_ <= lo_) done = true;
  }
  void next() {
    for (int d = static_cast<int>(idx.size()) - 1; d >= 0; --d) {
      if (++idx[d] < hi) return;
      idx[d] = lo;
    }
    done = true;
  }
};

long linear_index(const std::vector<int>& idx, int m) {
  long k = 0;
  for (int i : idx) k = k * m + i;
  return k;
}

std::vector<std::vector<complexd>> flatten_gammas(const CliffordRep& rep) {
  std::vector<std::vector<complexd>> g(rep.n);
  for (int j = 0; j < rep.n; ++j) {
    g[j].resize(rep.N * rep.N);
    for (int r = 0; r < rep.N; ++r)
      for (int c = 0; c < rep.N; ++c) g[j][r * rep.N + c] = rep.gamma[j](r, c);
  }
  return g;
}

}  // namespace

DerivativeStencil DerivativeStencil::central(int order) {
  DerivativeStencil st;
  st.order = order;
  if (order == 2) {
    st.radius = 1;
    st.d1 = {-0.5, 0.0, 0.5};
    st.d2 = {1.0, -2.0, 1.0};
  } else if (order == 4) {
    st.radius = 2;
    st.d1 = {1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0};
    st.d2 = {-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0};
  } else {
    throw std::invalid_argument("DerivativeStencil: order must be 2 or 4");
  }
  return st;
}

GridField::GridField(const Grid& g, int N_) : grid(g), N(N_) {
  if (N < 1) throw std::invalid_argument("GridField: component count must be >= 1");
  values.assign(static_cast<size_t>(grid.total_nodes()) * N, complexd{0.0, 0.0});
}

long GridField::stride(int axis) const {
  long s = 1;
  for (int d = grid.n - 1; d > axis; --d) s *= grid.m;
  return s;
}

Spinor GridField::at(long node) const {
  Spinor s(N);
  for (int c = 0; c < N; ++c) s[c] = values[node * N + c];
  return s;
}

void GridField::set(long node, const Spinor& s) {
  for (int c = 0; c < N; ++c) values[node * N + c] = s[c];
}

GridField sample_field(const Grid& grid, int N,
                       const std::function<Spinor(const RealVec&)>& eval,
                       const RealVec& offset) {
  if (offset.size() != grid.n) throw std::invalid_argument("sample_field: offset dimension mismatch");
  GridField f(grid, N);
  RealVec x(grid.n);
  long node = 0;
  for (BoxIter it(grid.n, 0, grid.m); !it.done; it.next(), ++node) {
    for (int d = 0; d < grid.n; ++d) x[d] = grid.node(it.idx[d]) + offset[d];
    const Spinor s = eval(x);
    for (int c = 0; c < N; ++c) f.values[node * N + c] = s[c];
  }
  return f;
}

Grid interior_grid(const Grid& grid, int radius) {
  const int m = grid.m - 2 * radius;
  if (m < 5) throw std::invalid_argument("interior_grid: grid too small for the stencil");
  return Grid(grid.n, grid.L - radius * grid.h(), m);
}

std::vector<GridField> fd_partials(const GridField& f, const DerivativeStencil& st) {
  const Grid& g = f.grid;
  const Grid inner = interior_grid(g, st.radius);
  std::vector<GridField> out(g.n, GridField(inner, f.N));
  const double invh = 1.0 / g.h();
  long node = 0;
  for (BoxIter it(g.n, st.radius, g.m - st.radius); !it.done; it.next(), ++node) {
    const long base = linear_index(it.idx, g.m);
    for (int d = 0; d < g.n; ++d) {
      const long sd = f.stride(d);
      for (int c = 0; c < f.N; ++c) {
        complexd acc{0.0, 0.0};
        for (int k = -st.radius; k <= st.radius; ++k) {
          const double w = st.d1[k + st.radius];
          if (w != 0.0) acc += w * f.values[(base + k * sd) * f.N + c];
        }
        out[d].values[node * f.N + c] = acc * invh;
      }
    }
  }
  return out;
}

GridField dirac_apply(const GridField& f, const CliffordRep& rep, const DerivativeStencil& st) {
  if (rep.n != f.grid.n || rep.N != f.N) throw std::invalid_argument("dirac_apply: representation mismatch");
  const Grid& g = f.grid;
  const Grid inner = interior_grid(g, st.radius);
  GridField out(inner, f.N);
  const auto gam = flatten_gammas(rep);
  const double invh = 1.0 / g.h();
  const int N = f.N;
  std::vector<complexd> dpsi(N);
  long node = 0;
  for (BoxIter it(g.n, st.radius, g.m - st.radius); !it.done; it.next(), ++node) {
    const long base = linear_index(it.idx, g.m);
    complexd* o = &out.values[node * N];
    for (int c = 0; c < N; ++c) o[c] = complexd{0.0, 0.0};
    for (int d = 0; d < g.n; ++d) {
      const long sd = f.stride(d);
      for (int c = 0; c < N; ++c) {
        complexd acc{0.0, 0.0};
        for (int k = -st.radius; k <= st.radius; ++k) {
          const double w = st.d1[k + st.radius];
          if (w != 0.0) acc += w * f.values[(base + k * sd) * N + c];
        }
        dpsi[c] = acc * invh;
      }
      const std::vector<complexd>& gm = gam[d];
      for (int r = 0; r < N; ++r) {
        complexd acc{0.0, 0.0};
        for (int c = 0; c < N; ++c) acc += gm[r * N + c] * dpsi[c];
        o[r] += acc;
      }
    }
  }
  return out;
}

std::vector<GridField> penrose_apply(const GridField& f, const CliffordRep& rep,
                                     const DerivativeStencil& st) {
  std::vector<GridField> parts = fd_partials(f, st);
  const int n = f.grid.n;
  const long nodes = parts[0].grid.total_nodes();
  for (long node = 0; node < nodes; ++node) {
    Spinor d = Spinor::Zero(f.N);
    for (int j = 0; j < n; ++j) d += rep.gamma[j] * parts[j].at(node);
    for (int j = 0; j < n; ++j) {
      const Spinor pj = parts[j].at(node) + (1.0 / n) * (rep.gamma[j] * d);
      parts[j].set(node, pj);
    }
  }
  return parts;
}

double penrose_dirac_gap(const GridField& f, const CliffordRep& rep,
                         const DerivativeStencil& st) {
  const std::vector<GridField> parts = fd_partials(f, st);
  const int n = f.grid.n;
  const long nodes = parts[0].grid.total_nodes();
  double gap = 0.0;
  for (long node = 0; node < nodes; ++node) {
    Spinor d = Spinor::Zero(f.N);
    double grad2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const Spinor pj = parts[j].at(node);
      grad2 += pj.squaredNorm();
      d += rep.gamma[j] * pj;
    }
    double pen2 = 0.0;
    for (int j = 0; j < n; ++j) {
      pen2 += (parts[j].at(node) + (1.0 / n) * (rep.gamma[j] * d)).squaredNorm();
    }
    const double lhs = grad2;
    const double rhs = pen2 + d.squaredNorm() / n;
    gap = std::max(gap, std::abs(lhs - rhs) / std::max(lhs, 1e-300));
  }
  return gap;
}

ResidualNorms nonlinear_residual(const CliffordRep& rep, const BubbleParams& p,
                                 const Grid& grid, const DerivativeStencil& st) {
  const auto eval = [&](const RealVec& x) { return bubble_eval(rep, p, x); };
  const GridField f = sample_field(grid, rep.N, eval, p.center);
  const GridField df = dirac_apply(f, rep, st);

  // interior nodes of f correspond 1:1 to nodes of df
  const double expo = 1.0 / (p.n - 1.0);
  double sup_diff = 0.0, sup_d = 0.0, l2_diff = 0.0, l2_d = 0.0;
  long node = 0;
  for (BoxIter it(grid.n, st.radius, grid.m - st.radius); !it.done; it.next(), ++node) {
    const long base = linear_index(it.idx, grid.m);
    double len2 = 0.0;
    for (int c = 0; c < f.N; ++c) len2 += std::norm(f.values[base * f.N + c]);
    const double power = len2 > 0.0 ? std::exp(expo * std::log(len2)) : 0.0;
    double diff2 = 0.0, d2 = 0.0;
    for (int c = 0; c < f.N; ++c) {
      const complexd dv = df.values[node * f.N + c];
      diff2 += std::norm(dv - power * f.values[base * f.N + c]);
      d2 += std::norm(dv);
    }
    sup_diff = std::max(sup_diff, diff2);
    sup_d = std::max(sup_d, d2);
    l2_diff += diff2;
    l2_d += d2;
  }
  if (l2_d <= 0.0) throw std::runtime_error("nonlinear_residual: Dirac image vanished");
  return {std::sqrt(sup_diff / sup_d), std::sqrt(l2_diff / l2_d)};
}

double scalar_pde_residual(const std::function<double(const RealVec&)>& u,
                           const std::function<double(const RealVec&, double)>& rhs,
                           double c, const Grid& grid, const DerivativeStencil& st,
                           const RealVec& offset) {
  if (offset.size() != grid.n) throw std::invalid_argument("scalar_pde_residual: offset dimension mismatch");
  const double invh2 = 1.0 / (grid.h() * grid.h());
  RealVec x(grid.n);
  double sup_res = 0.0, sup_rhs = 0.0;
  for (BoxIter it(grid.n, st.radius, grid.m - st.radius); !it.done; it.next()) {
    for (int d = 0; d < grid.n; ++d) x[d] = grid.node(it.idx[d]) + offset[d];
    const double u0 = u(x);
    double lap = 0.0;
    RealVec xs = x;
    for (int d = 0; d < grid.n; ++d) {
      double acc = st.d2[st.radius] * u0;
      for (int k = 1; k <= st.radius; ++k) {
        xs[d] = x[d] + k * grid.h();
        acc += st.d2[st.radius + k] * u(xs);
        xs[d] = x[d] - k * grid.h();
        acc += st.d2[st.radius - k] * u(xs);
      }
      xs[d] = x[d];
      lap += acc * invh2;
    }
    const double r = rhs(x, u0);
    sup_res = std::max(sup_res, std::abs(-c * lap - r));
    sup_rhs = std::max(sup_rhs, std::abs(r));
  }
  if (sup_rhs <= 0.0) throw std::runtime_error("scalar_pde_residual: vanishing right-hand side");
  return sup_res / sup_rhs;
}

}  // namespace cdirac
