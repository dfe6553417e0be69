#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cdirac/fields.hpp"
#include "cdirac/greenkernel.hpp"
#include "oracles.hpp"

using namespace cdirac;

TEST_CASE("Gegenbauer values against closed forms") {
  CHECK(gegenbauer(0.5, 0, 0.77) == 1.0);
  CHECK(gegenbauer(0.5, 1, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
  std::mt19937_64 rng(11001);
  std::uniform_real_distribution<double> ut(-1.0, 1.0);
  for (double tau : {0.5, 1.0, 1.5, 2.0}) {
    for (int t = 0; t < 40; ++t) {
      double x = ut(rng);
      CHECK(gegenbauer(tau, 1, x) == doctest::Approx(2.0 * tau * x).epsilon(1e-14));
      double c2 = 2.0 * tau * (tau + 1.0) * x * x - tau;
      CHECK(gegenbauer(tau, 2, x) == doctest::Approx(c2).epsilon(1e-13));
    }
  }
}

TEST_CASE("generating function identity") {
  // sum_k s^k C_k^tau(t) = (1 - 2st + s^2)^{-tau}
  double acc = 0.0, sk = 1.0;
  const double s = 0.4, t = 0.7;
  for (int k = 0; k <= 60; ++k) {
    acc += sk * gegenbauer(0.5, k, t);
    sk *= s;
  }
  CHECK(std::abs(acc - std::pow(1.0 - 2.0 * s * t + s * s, -0.5)) < 1e-12);

  for (double tau : {0.5, 1.0, 1.5}) {
    for (double tt : {-0.95, -0.4, 0.0, 0.55, 0.9}) {
      double a = 0.0, p = 1.0;
      for (int k = 0; k <= 70; ++k) {
        a += p * gegenbauer(tau, k, tt);
        p *= 0.35;
      }
      double ref = std::pow(1.0 - 0.7 * tt + 0.35 * 0.35, -tau);
      CHECK(std::abs(a / ref - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("Gegenbauer with tau = 1/2 are the Legendre polynomials") {
  std::mt19937_64 rng(11002);
  std::uniform_real_distribution<double> ut(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    double x = ut(rng);
    double pkm = 1.0, pk = x;
    for (int k = 1; k <= 25; ++k) {
      CHECK(std::abs(gegenbauer(0.5, k, x) - pk) < 1e-13);
      double pn = ((2.0 * k + 1.0) * x * pk - k * pkm) / (k + 1.0);
      pkm = pk;
      pk = pn;
    }
  }
}

TEST_CASE("derivatives via the index shift match finite differences") {
  std::mt19937_64 rng(11003);
  std::uniform_real_distribution<double> ut(-0.9, 0.9);
  const double h = 1e-5;
  for (double tau : {0.5, 1.0}) {
    for (int k : {1, 3, 7, 15}) {
      for (int trial = 0; trial < 10; ++trial) {
        double t = ut(rng);
        double fd1 = (gegenbauer(tau, k, t + h) - gegenbauer(tau, k, t - h)) / (2 * h);
        CHECK(std::abs(gegenbauer_derivative(tau, k, t, 1) - fd1) <
              1e-5 * std::max(1.0, std::abs(fd1)));
        double fd2 = (gegenbauer_derivative(tau, k, t + h, 1) -
                      gegenbauer_derivative(tau, k, t - h, 1)) /
                     (2 * h);
        CHECK(std::abs(gegenbauer_derivative(tau, k, t, 2) - fd2) <
              1e-4 * std::max(1.0, std::abs(fd2)));
      }
    }
  }
}

TEST_CASE("derivative growth in the index stays below k^{2j + n - 3}") {
  // tau = (n-2)/2; sup over [-1,1] is attained at t = 1
  for (int n : {3, 4}) {
    double tau = 0.5 * (n - 2);
    for (int j = 0; j <= 2; ++j) {
      auto peak = [&](int k) {
        double best = 0.0;
        for (int i = 0; i <= 400; ++i) {
          double t = -1.0 + 2.0 * i / 400.0;
          best = std::max(best, std::abs(gegenbauer_derivative(tau, k, t, j)));
        }
        return best;
      };
      double slope = std::log(peak(120) / peak(40)) / std::log(3.0);
      CHECK(slope <= 2.0 * j + n - 3 + 0.2);
    }
  }
}

TEST_CASE("index and weight preconditions") {
  CHECK_THROWS_AS(gegenbauer(0.0, 3, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(gegenbauer(-0.5, 3, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(gegenbauer(0.5, 121, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(gegenbauer(0.5, -1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(gegenbauer_derivative(0.5, 3, 0.5, 3), std::invalid_argument);
}

TEST_CASE("Dirac Green kernel closed form") {
  std::mt19937_64 rng(11004);
  CliffordRep rep3 = build_rep(3);
  RealVec e1(3);
  e1 << 1.0, 0.0, 0.0;
  // G(e1) = gamma_1 / (4 pi)
  Matrix expect = rep3.gamma[0] / (4.0 * oracle::kPi);
  CHECK((kernel_G(rep3, e1) - expect).cwiseAbs().maxCoeff() < 1e-15);

  for (int n = 2; n <= 4; ++n) {
    CliffordRep rep = build_rep(n);
    for (int t = 0; t < 25; ++t) {
      RealVec d = oracle::random_point(rng, n, 2.0);
      if (d.norm() < 0.05) continue;
      Matrix g = kernel_G(rep, d);
      CHECK((g + kernel_G(rep, RealVec(-d))).cwiseAbs().maxCoeff() < 1e-14);
      double expect_norm = std::pow(d.norm(), 1.0 - n) / oracle::sphere_volume(n - 1);
      CHECK(g.operatorNorm() == doctest::Approx(expect_norm).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(kernel_G(rep3, RealVec::Zero(3)), std::invalid_argument);
}

TEST_CASE("kernel columns are Dirac-harmonic away from the pole") {
  std::mt19937_64 rng(11005);
  CliffordRep rep3 = build_rep(3);
  const double h = 1e-4;
  for (int t = 0; t < 10; ++t) {
    RealVec y = 2.0 * oracle::random_unit(rng, 3);
    RealVec x = oracle::random_point(rng, 3, 0.5);
    Matrix d = Matrix::Zero(rep3.N, rep3.N);
    for (int j = 0; j < 3; ++j) {
      RealVec xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      d += rep3.gamma[j] *
           (kernel_G(rep3, RealVec(xp - y)) - kernel_G(rep3, RealVec(xm - y))) / (2.0 * h);
    }
    double scale = kernel_G(rep3, RealVec(x - y)).cwiseAbs().maxCoeff() / (x - y).norm();
    CHECK(d.cwiseAbs().maxCoeff() < 1e-6 * scale);
  }
}

TEST_CASE("series expansion of the kernel") {
  std::mt19937_64 rng(11006);
  CliffordRep rep3 = build_rep(3);

  // at x = 0, only Xi_1 contributes; K = 2 already matches exactly
  for (int t = 0; t < 5; ++t) {
    RealVec y = 1.4 * oracle::random_unit(rng, 3);
    Matrix s = series_expand_kernel(rep3, RealVec::Zero(3), y, 2);
    Matrix ref = kernel_G(rep3, RealVec(-y));
    CHECK((s - ref).cwiseAbs().maxCoeff() < 1e-13 * ref.cwiseAbs().maxCoeff());
  }

  // |x|/|y| = 0.3, K = 60: relative error below 1e-10
  for (int t = 0; t < 5; ++t) {
    RealVec x = 0.3 * oracle::random_unit(rng, 3);
    RealVec y = oracle::random_unit(rng, 3);
    Matrix s = series_expand_kernel(rep3, x, y, 60);
    Matrix ref = kernel_G(rep3, RealVec(x - y));
    CHECK((s - ref).cwiseAbs().maxCoeff() < 1e-10 * ref.cwiseAbs().maxCoeff());
  }

  // n = 4 works as well
  CliffordRep rep4 = build_rep(4);
  RealVec x4 = 0.35 * oracle::random_unit(rng, 4);
  RealVec y4 = oracle::random_unit(rng, 4);
  Matrix s4 = series_expand_kernel(rep4, x4, y4, 70);
  Matrix ref4 = kernel_G(rep4, RealVec(x4 - y4));
  CHECK((s4 - ref4).cwiseAbs().maxCoeff() < 1e-8 * ref4.cwiseAbs().maxCoeff());

  CHECK_THROWS_AS(series_expand_kernel(rep3, RealVec(1.2 * oracle::random_unit(rng, 3)),
                                       RealVec(oracle::random_unit(rng, 3)), 10),
                  std::invalid_argument);
}

TEST_CASE("series truncation error decays geometrically") {
  std::mt19937_64 rng(11007);
  CliffordRep rep3 = build_rep(3);
  RealVec x = 0.3 * oracle::random_unit(rng, 3);
  RealVec y = oracle::random_unit(rng, 3);
  Matrix ref = kernel_G(rep3, RealVec(x - y));
  auto err = [&](int K) {
    return (series_expand_kernel(rep3, x, y, K) - ref).cwiseAbs().maxCoeff();
  };
  // strictly decreasing while the truncation error is still above the
  // roundoff floor (the tail of the series saturates near 1e-17)
  double prev = err(6);
  for (int K = 11; K <= 26; K += 5) {
    double e = err(K);
    CHECK(e < prev);
    CHECK(e > 1e-16);
    prev = e;
  }
  // least-squares log slope over the same window matches log(0.3) up to a
  // polynomial correction
  double sk = 0.0, se = 0.0, skk = 0.0, ske = 0.0;
  int cnt = 0;
  for (int K = 8; K <= 24; ++K) {
    double le = std::log(err(K));
    sk += K;
    se += le;
    skk += double(K) * K;
    ske += K * le;
    ++cnt;
  }
  double slope = (cnt * ske - sk * se) / (cnt * skk - sk * sk);
  CHECK(std::abs(slope - std::log(0.3)) < 0.1 * std::abs(std::log(0.3)));
}

TEST_CASE("Xi terms: homogeneity, harmonicity, Dirac nullity") {
  std::mt19937_64 rng(11008);
  CliffordRep rep3 = build_rep(3);

  for (int t = 0; t < 3; ++t) {
    RealVec y = oracle::random_unit(rng, 3);
    CHECK(xi_matrix(rep3, 0, oracle::random_point(rng, 3, 1.0), y).cwiseAbs().maxCoeff() ==
          0.0);
    // Xi_1 = -gamma(y/|y|) everywhere
    RealVec x = oracle::random_point(rng, 3, 1.0);
    Matrix expect = -clifford_matrix(rep3, y);
    CHECK((xi_matrix(rep3, 1, x, y) - expect).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((xi_matrix(rep3, 1, RealVec::Zero(3), y) - expect).cwiseAbs().maxCoeff() <
          1e-15);

    for (int k = 2; k <= 6; ++k) {
      // homogeneity of degree k-1 in x
      for (double mu : {0.4, 1.9}) {
        Matrix a = xi_matrix(rep3, k, RealVec(mu * x), y);
        Matrix b = std::pow(mu, k - 1.0) * xi_matrix(rep3, k, x, y);
        CHECK((a - b).cwiseAbs().maxCoeff() <
              1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff()));
      }
      // entrywise Laplacian and column Dirac operator vanish; fourth-order
      // stencils are exact on the polynomial entries (degree <= 5 here)
      const double h = 1e-3;
      Matrix at = xi_matrix(rep3, k, x, y);
      Matrix lap = Matrix::Zero(rep3.N, rep3.N);
      Matrix dir = Matrix::Zero(rep3.N, rep3.N);
      for (int j = 0; j < 3; ++j) {
        RealVec xp = x, xm = x, xp2 = x, xm2 = x;
        xp[j] += h;
        xm[j] -= h;
        xp2[j] += 2 * h;
        xm2[j] -= 2 * h;
        Matrix fp = xi_matrix(rep3, k, xp, y);
        Matrix fm = xi_matrix(rep3, k, xm, y);
        Matrix fp2 = xi_matrix(rep3, k, xp2, y);
        Matrix fm2 = xi_matrix(rep3, k, xm2, y);
        lap += (-fp2 + 16.0 * fp - 30.0 * at + 16.0 * fm - fm2) / (12.0 * h * h);
        dir += rep3.gamma[j] * (-fp2 + 8.0 * fp - 8.0 * fm + fm2) / (12.0 * h);
      }
      double scale = std::max(1.0, at.cwiseAbs().maxCoeff());
      CHECK(lap.cwiseAbs().maxCoeff() < 1e-7 * scale);
      CHECK(dir.cwiseAbs().maxCoeff() < 1e-7 * scale);
    }
  }
  CHECK_THROWS_AS(xi_matrix(build_rep(2), 1, RealVec::Zero(2), RealVec::Ones(2)),
                  std::invalid_argument);
}

TEST_CASE("representation formula on the unit ball: constants") {
  std::mt19937_64 rng(11009);
  CliffordRep rep3 = build_rep(3);
  Spinor c = oracle::random_spinor(rng, rep3.N);

  SphereQuadrature surf = sphere_quadrature(2, 20);
  Spinor at0 = representation_reconstruct(rep3, [&](const RealVec&) { return c; },
                                          SpinorEvaluator(), RealVec::Zero(3), surf, 0);
  CHECK((at0 - c).norm() < 1e-12 * c.norm());

  SphereQuadrature fine = sphere_quadrature(2, 40);
  for (int t = 0; t < 6; ++t) {
    RealVec x = oracle::random_point(rng, 3, 0.5 / std::sqrt(3.0));
    Spinor got = representation_reconstruct(rep3, [&](const RealVec&) { return c; },
                                            SpinorEvaluator(), x, fine, 0);
    CHECK((got - c).norm() < 1e-8 * c.norm());
  }

  RealVec outside(3);
  outside << 1.5, 0.0, 0.0;
  CHECK_THROWS_AS(representation_reconstruct(rep3, [&](const RealVec&) { return c; },
                                             SpinorEvaluator(), outside, surf, 0),
                  std::invalid_argument);
  SphereQuadrature wrong = sphere_quadrature(1, 20);
  CHECK_THROWS_AS(representation_reconstruct(rep3, [&](const RealVec&) { return c; },
                                             SpinorEvaluator(), RealVec::Zero(3), wrong, 0),
                  std::invalid_argument);
}

TEST_CASE("representation formula with a volume term: ambient twistor field") {
  std::mt19937_64 rng(11010);
  CliffordRep rep3 = build_rep(3);
  Spinor phi = oracle::random_spinor(rng, rep3.N);
  phi /= phi.norm();
  // psi = gamma(x) phi solves D psi = -3 phi
  SpinorEvaluator f = [&](const RealVec& y) { return clifford_mul(rep3, y, phi); };
  SpinorEvaluator df = [&](const RealVec&) { return Spinor(-3.0 * phi); };

  SphereQuadrature surf = sphere_quadrature(2, 40);
  // cell center of the res = 24 midpoint lattice; tripling the resolution
  // keeps it a center (dyadic refinement would move it onto a cell corner,
  // where the excluded-cell symmetry around the kernel pole is lost)
  RealVec x(3);
  x << 2.5 / 12.0, 2.5 / 12.0, 2.5 / 12.0;
  Spinor expect = f(x);

  Spinor got24 = representation_reconstruct(rep3, f, df, x, surf, 24);
  CHECK((got24 - expect).norm() < 5e-2 * phi.norm());

  Spinor got72 = representation_reconstruct(rep3, f, df, x, surf, 72);
  CHECK((got72 - expect).norm() < (got24 - expect).norm());
}

TEST_CASE("representation formula rebuilds the planar bubble") {
  CliffordRep rep2 = build_rep(2);
  BubbleParams p = BubbleParams::ground_state(2, 1.0, RealVec::Zero(2));
  SpinorEvaluator f = [&](const RealVec& y) { return bubble_eval(rep2, p, y); };
  // D psi = |psi|^2 psi on shell
  SpinorEvaluator df = [&](const RealVec& y) {
    Spinor v = bubble_eval(rep2, p, y);
    return Spinor(v.squaredNorm() * v);
  };
  SphereQuadrature surf = sphere_quadrature(1, 64);
  RealVec x(2);
  x << 2.5 / 24.0, 2.5 / 24.0;
  Spinor expect = f(x);
  double err12 = (representation_reconstruct(rep2, f, df, x, surf, 12) - expect).norm() /
                 expect.norm();
  double err48 = (representation_reconstruct(rep2, f, df, x, surf, 48) - expect).norm() /
                 expect.norm();
  CHECK(err48 < 5e-2);
  CHECK(err48 < err12);
}

TEST_CASE("harmonic projections of constant boundary data") {
  std::mt19937_64 rng(11011);
  CliffordRep rep3 = build_rep(3);
  Spinor c = oracle::random_spinor(rng, rep3.N);
  SphereQuadrature surf = sphere_quadrature(2, 20);
  SpinorEvaluator data = [&](const RealVec&) { return c; };
  for (int t = 0; t < 5; ++t) {
    RealVec x = oracle::random_point(rng, 3, 0.9);
    CHECK((harmonic_projection(rep3, data, 1, surf)(x) - c).norm() < 1e-12 * c.norm());
    for (int k = 2; k <= 4; ++k)
      CHECK(harmonic_projection(rep3, data, k, surf)(x).norm() < 1e-12 * c.norm());
  }
}

TEST_CASE("degree-matched reproduction of Dirac-harmonic boundary fields") {
  std::mt19937_64 rng(11012);
  CliffordRep rep3 = build_rep(3);
  Spinor w = oracle::random_spinor(rng, rep3.N);
  Spinor u = oracle::random_spinor(rng, rep3.N);
  RealVec a = oracle::random_unit(rng, 3);

  // degree 1: D[(x1 g1 + x2 g2 - 2 x3 g3) w] = -(1 + 1 - 2) w = 0
  SpinorEvaluator lin = [&](const RealVec& x) {
    return Spinor(x[0] * rep3.gamma[0] * w + x[1] * rep3.gamma[1] * w -
                  2.0 * x[2] * rep3.gamma[2] * w);
  };
  // degree 2: columns of Xi_3(x, a) are Dirac-harmonic polynomials
  SpinorEvaluator quad = [&](const RealVec& x) { return Spinor(xi_matrix(rep3, 3, x, a) * u); };

  SphereQuadrature surf = sphere_quadrature(2, 20);
  for (int t = 0; t < 5; ++t) {
    RealVec x = oracle::random_point(rng, 3, 0.8);
    double s1 = std::max(lin(x).norm(), 1e-9);
    CHECK((harmonic_projection(rep3, lin, 2, surf)(x) - lin(x)).norm() < 1e-10 * s1);
    CHECK(harmonic_projection(rep3, lin, 1, surf)(x).norm() < 1e-10 * s1);
    CHECK(harmonic_projection(rep3, lin, 3, surf)(x).norm() < 1e-10 * s1);

    double s2 = std::max(quad(x).norm(), 1e-9);
    CHECK((harmonic_projection(rep3, quad, 3, surf)(x) - quad(x)).norm() < 1e-10 * s2);
    CHECK(harmonic_projection(rep3, quad, 1, surf)(x).norm() < 1e-10 * s2);

    // the sum of the matched projections rebuilds a mixed field
    std::mt19937_64 rng2(11013);
    Spinor cc = oracle::random_spinor(rng2, rep3.N);
    SpinorEvaluator mixed = [&](const RealVec& y) {
      return Spinor(cc + lin(y) + quad(y));
    };
    Spinor sum = Spinor::Zero(rep3.N);
    for (int k = 1; k <= 4; ++k) sum += harmonic_projection(rep3, mixed, k, surf)(x);
    Spinor expect = cc + lin(x) + quad(x);
    CHECK((sum - expect).norm() < 1e-10 * std::max(expect.norm(), 1e-9));
  }
}

TEST_CASE("boundary restriction of gamma(y) Phi has vanishing projections") {
  // the Cauchy transform of twistor boundary data vanishes on the ball:
  // gamma(y) Phi restricted to the sphere contributes only through the
  // volume term of the representation formula, so every Q_k is zero
  std::mt19937_64 rng(11014);
  CliffordRep rep3 = build_rep(3);
  Spinor phi = oracle::random_spinor(rng, rep3.N);
  SpinorEvaluator data = [&](const RealVec& y) { return clifford_mul(rep3, y, phi); };
  SphereQuadrature surf = sphere_quadrature(2, 20);
  for (int t = 0; t < 5; ++t) {
    RealVec x = oracle::random_point(rng, 3, 0.8);
    for (int k = 1; k <= 4; ++k)
      CHECK(harmonic_projection(rep3, data, k, surf)(x).norm() < 1e-12 * phi.norm());
  }
}

TEST_CASE("projections are Dirac-null fields") {
  std::mt19937_64 rng(11015);
  CliffordRep rep3 = build_rep(3);
  Spinor w = oracle::random_spinor(rng, rep3.N);
  Spinor u = oracle::random_spinor(rng, rep3.N);
  Spinor c = oracle::random_spinor(rng, rep3.N);
  RealVec a = oracle::random_unit(rng, 3);
  SpinorEvaluator data = [&](const RealVec& y) {
    return Spinor(c + y[0] * rep3.gamma[0] * w + y[1] * rep3.gamma[1] * w -
                  2.0 * y[2] * rep3.gamma[2] * w + xi_matrix(rep3, 3, y, a) * u);
  };
  SphereQuadrature surf = sphere_quadrature(2, 20);
  const double h = 1e-3;
  for (int k = 1; k <= 4; ++k) {
    SpinorEvaluator q = harmonic_projection(rep3, data, k, surf);
    for (int t = 0; t < 3; ++t) {
      RealVec x = oracle::random_point(rng, 3, 0.7);
      Spinor d = Spinor::Zero(rep3.N);
      for (int j = 0; j < 3; ++j) {
        RealVec xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        d += rep3.gamma[j] * (q(xp) - q(xm)) / (2.0 * h);
      }
      CHECK(d.norm() < 1e-7 * std::max(1.0, q(x).norm()));
    }
  }
}
