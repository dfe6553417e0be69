#include "cdirac/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cdirac {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// 7-15 Gauss-Kronrod pair (QUADPACK constants).
constexpr double kXgk[8] = {
    0.9914553711208126392068547, 0.9491079123427585245261897,
    0.8648644233597690727897128, 0.7415311855993944398638648,
    0.5860872354676911302941448, 0.4058451513773971669066064,
    0.2077849550078984676006894, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292249637320, 0.0630920926299785532907007,
    0.1047900103222501838398763, 0.1406532597155259187451896,
    0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992};
constexpr double kWg[4] = {
    0.1294849661688696932706114, 0.2797053914892766679014678,
    0.3818300505051189449503698, 0.4179591836734693877551020};

struct PanelResult {
  double kronrod;
  double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - hw * kXgk[i]);
    fv[14 - i] = f(c + hw * kXgk[i]);
  }
  fv[7] = f(c);
  double k = 0.0, g = 0.0;
  for (int i = 0; i < 7; ++i) k += kWgk[i] * (fv[i] + fv[14 - i]);
  k += kWgk[7] * fv[7];
  for (int i = 0; i < 3; ++i) g += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  g += kWg[3] * fv[7];
  k *= hw;
  g *= hw;
  if (!std::isfinite(k)) throw std::runtime_error("integrate_adaptive: non-finite integrand");
  return {k, std::abs(k - g)};
}

double integrate_recursive(const std::function<double(double)>& f, double a,
                           double b, double tol, int depth) {
  const PanelResult r = gk15(f, a, b);
  if (r.err <= tol || b - a < 16 * std::numeric_limits<double>::epsilon() * std::abs(b)) {
    return r.kronrod;
  }
  if (depth > 60) throw std::runtime_error("integrate_adaptive: subdivision did not converge");
  const double c = 0.5 * (a + b);
  return integrate_recursive(f, a, c, 0.5 * tol, depth + 1) +
         integrate_recursive(f, c, b, 0.5 * tol, depth + 1);
}

// Value and derivative of the Legendre polynomial P_k.
void legendre_eval(int k, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (k == 0) { p = 1.0; dp = 0.0; return; }
  for (int j = 2; j <= k; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = k * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

Grid::Grid(int n_, double L_, int m_) : n(n_), L(L_), m(m_) {
  if (n < 1 || n > 5) throw std::invalid_argument("Grid: dimension must be in 1..5");
  if (L <= 0.0) throw std::invalid_argument("Grid: half-width must be positive");
  if (m < 5 || m % 2 == 0) throw std::invalid_argument("Grid: m must be odd and >= 5");
  if (total_nodes() > (1L << 31)) throw std::invalid_argument("Grid: too many nodes");
}

long Grid::total_nodes() const {
  long t = 1;
  for (int d = 0; d < n; ++d) {
    t *= m;
    if (t > (1L << 40)) return t;  // avoid overflow in the constructor check
  }
  return t;
}

double sphere_volume(int m) {
  if (m < 0) throw std::invalid_argument("sphere_volume: dimension must be >= 0");
  return 2.0 * std::pow(kPi, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

RealVec stereo_to_sphere(const RealVec& x) {
  const int n = static_cast<int>(x.size());
  const double r2 = x.squaredNorm();
  RealVec y(n + 1);
  y.head(n) = (2.0 / (1.0 + r2)) * x;
  y[n] = (r2 - 1.0) / (r2 + 1.0);
  return y;
}

RealVec stereo_to_plane(const RealVec& y) {
  const int n = static_cast<int>(y.size()) - 1;
  if (n < 1) throw std::invalid_argument("stereo_to_plane: point dimension must be >= 2");
  const double denom = 1.0 - y[n];
  if (std::abs(denom) < 1e-300) throw std::invalid_argument("stereo_to_plane: north pole is not in the chart");
  return RealVec(y.head(n) / denom);
}

double conformal_factor(const RealVec& x) {
  return 2.0 / (1.0 + x.squaredNorm());
}

void gauss_legendre(int k, std::vector<double>& nodes, std::vector<double>& weights) {
  if (k < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  nodes.assign(k, 0.0);
  weights.assign(k, 0.0);
  for (int i = 0; i < (k + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (k + 0.5));
    double p = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre_eval(k, x, p, dp);
      const double dx = -p / dp;
      x += dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_eval(k, x, p, dp);
    nodes[i] = -x;
    nodes[k - 1 - i] = x;
    weights[i] = weights[k - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (k % 2 == 1) nodes[k / 2] = 0.0;
}

SphereQuadrature sphere_quadrature(int dim, int order) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("sphere_quadrature: supported spheres are S^1..S^3");
  if (order < 1 || order > 64) throw std::invalid_argument("sphere_quadrature: order must be in 1..64");
  SphereQuadrature q;
  q.dim = dim;
  q.order = order;
  const int naz = order + 1;        // uniform azimuth, exact through degree order
  const int npol = order / 2 + 1;   // Gaussian polar rules, exact through degree order

  if (dim == 1) {
    for (int j = 0; j < naz; ++j) {
      const double phi = 2.0 * kPi * j / naz;
      RealVec y(2);
      y << std::cos(phi), std::sin(phi);
      q.nodes.push_back(y);
      q.weights.push_back(2.0 * kPi / naz);
    }
    return q;
  }

  std::vector<double> t, wt;
  gauss_legendre(npol, t, wt);

  if (dim == 2) {
    for (int i = 0; i < npol; ++i) {
      const double s = std::sqrt(1.0 - t[i] * t[i]);
      for (int j = 0; j < naz; ++j) {
        const double phi = 2.0 * kPi * j / naz;
        RealVec y(3);
        y << s * std::cos(phi), s * std::sin(phi), t[i];
        q.nodes.push_back(y);
        q.weights.push_back(wt[i] * 2.0 * kPi / naz);
      }
    }
    return q;
  }

  // S^3: the outermost polar angle carries the weight sin^2(theta), which is
  // the Chebyshev (second kind) measure in t = cos(theta); its Gauss rule is
  // closed form.
  for (int i = 1; i <= npol; ++i) {
    const double a = i * kPi / (npol + 1);
    const double t1 = std::cos(a);
    const double s1 = std::sin(a);
    const double w1 = kPi / (npol + 1) * s1 * s1;
    for (int i2 = 0; i2 < npol; ++i2) {
      const double s2 = std::sqrt(1.0 - t[i2] * t[i2]);
      for (int j = 0; j < naz; ++j) {
        const double phi = 2.0 * kPi * j / naz;
        RealVec y(4);
        y << s1 * s2 * std::cos(phi), s1 * s2 * std::sin(phi), s1 * t[i2], t1;
        q.nodes.push_back(y);
        q.weights.push_back(w1 * wt[i2] * 2.0 * kPi / naz);
      }
    }
  }
  return q;
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol) {
  if (!(b > a)) throw std::invalid_argument("integrate_adaptive: empty interval");
  const PanelResult rough = gk15(f, a, b);
  const double tol = std::max(rel_tol * std::abs(rough.kronrod), 1e-300);
  return integrate_recursive(f, a, b, tol, 0);
}

double radial_integral(const std::function<double(double)>& f, int n,
                       double rel_tol) {
  if (n < 1) throw std::invalid_argument("radial_integral: dimension must be >= 1");
  const double shell = sphere_volume(n - 1);
  const auto g = [&](double theta) {
    const double r = std::tan(theta);
    const double sec2 = 1.0 + r * r;
    return std::pow(r, n - 1) * f(r) * sec2;
  };
  // Divergent profiles show up as a growing compactified tail; reject them
  // before the subdivision burns its depth budget near theta = pi/2.
  double prev = std::numeric_limits<double>::infinity();
  for (double r = 1e4; r <= 1e8; r *= 100.0) {
    const double theta = std::atan(r);
    const double tail = std::abs(g(theta)) * (0.5 * kPi - theta);
    if (tail > 4.0 * prev && tail > 1e-290) {
      throw std::runtime_error("radial_integral: integrand tail does not decay");
    }
    prev = tail;
  }
  return shell * integrate_adaptive(g, 0.0, 0.5 * kPi, rel_tol);
}

}  // namespace cdirac
