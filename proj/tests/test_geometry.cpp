#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "cdirac/geometry.hpp"
#include "oracles.hpp"

using namespace cdirac;

TEST_CASE("grid node layout") {
  const Grid g(3, 4.0, 81);
  CHECK(g.h() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(g.node(0) == -4.0);
  CHECK(g.node(80) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(g.node(40) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(g.total_nodes() == 81L * 81L * 81L);
  CHECK_THROWS_AS(Grid(3, 4.0, 80), std::invalid_argument);   // even m
  CHECK_THROWS_AS(Grid(3, 4.0, 3), std::invalid_argument);    // too small
  CHECK_THROWS_AS(Grid(3, -1.0, 81), std::invalid_argument);  // bad width
}

TEST_CASE("sphere volumes") {
  CHECK(sphere_volume(1) == doctest::Approx(2.0 * oracle::kPi).epsilon(1e-14));
  CHECK(sphere_volume(2) == doctest::Approx(4.0 * oracle::kPi).epsilon(1e-14));
  CHECK(sphere_volume(3) == doctest::Approx(2.0 * oracle::kPi * oracle::kPi).epsilon(1e-14));
  CHECK(sphere_volume(4) == doctest::Approx(8.0 * oracle::kPi * oracle::kPi / 3.0).epsilon(1e-14));
}

TEST_CASE("stereographic projection round trips") {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 1000; ++trial) {
      const RealVec x = oracle::random_point(rng, n, 5.0);
      const RealVec y = stereo_to_sphere(x);
      CHECK(std::abs(y.norm() - 1.0) <= 1e-14);
      CHECK((stereo_to_plane(y) - x).norm() <= 1e-12 * (1.0 + x.norm()));
    }
    // sphere -> plane -> sphere
    for (int trial = 0; trial < 1000; ++trial) {
      const RealVec y = oracle::random_unit(rng, n + 1);
      if (y[n] > 0.999) continue;
      const RealVec x = stereo_to_plane(y);
      CHECK((stereo_to_sphere(x) - y).norm() <= 1e-12);
    }
  }
}

TEST_CASE("stereographic chart named points") {
  RealVec south(3);
  south << 0.0, 0.0, -1.0;
  CHECK(stereo_to_plane(south).norm() == 0.0);

  RealVec equator(3);
  equator << 1.0, 0.0, 0.0;
  const RealVec x = stereo_to_plane(equator);
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(x[1] == 0.0);

  RealVec north(3);
  north << 0.0, 0.0, 1.0;
  CHECK_THROWS_AS(stereo_to_plane(north), std::invalid_argument);

  const RealVec origin_image = stereo_to_sphere(RealVec::Zero(2));
  CHECK(origin_image[2] == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("conformal factor matches the finite-difference metric pullback") {
  std::mt19937_64 rng(13);
  const double fd = 1e-5;
  for (int n = 2; n <= 3; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      const RealVec x = oracle::random_point(rng, n, 3.0);
      const RealVec v = oracle::random_unit(rng, n);
      const RealVec yp = stereo_to_sphere(x + fd * v);
      const RealVec ym = stereo_to_sphere(x - fd * v);
      const double measured = ((yp - ym) / (2.0 * fd)).norm();
      CHECK(measured == doctest::Approx(conformal_factor(x)).epsilon(1e-8));
    }
  }
}

TEST_CASE("sphere quadrature weights and node norms") {
  for (int dim = 1; dim <= 3; ++dim) {
    const SphereQuadrature q = sphere_quadrature(dim, 12);
    double total = 0.0;
    for (size_t i = 0; i < q.nodes.size(); ++i) {
      CHECK(std::abs(q.nodes[i].norm() - 1.0) <= 1e-14);
      CHECK(q.weights[i] > 0.0);
      total += q.weights[i];
    }
    CHECK(total == doctest::Approx(oracle::sphere_volume(dim)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(sphere_quadrature(4, 8), std::invalid_argument);
  CHECK_THROWS_AS(sphere_quadrature(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(sphere_quadrature(2, 100), std::invalid_argument);
}

TEST_CASE("sphere quadrature integrates monomials exactly up to declared order") {
  const int order = 8;
  for (int dim = 1; dim <= 3; ++dim) {
    CAPTURE(dim);
    const SphereQuadrature q = sphere_quadrature(dim, order);
    const int d = dim + 1;
    std::vector<int> expo(d, 0);
    // enumerate all exponent multi-indices with |a| <= order
    std::function<void(int, int)> visit = [&](int coord, int remaining) {
      if (coord == d) {
        double acc = 0.0;
        for (size_t i = 0; i < q.nodes.size(); ++i) {
          double term = q.weights[i];
          for (int c = 0; c < d; ++c) term *= std::pow(q.nodes[i][c], expo[c]);
          acc += term;
        }
        const double exact = oracle::sphere_monomial_moment(expo);
        CHECK(std::abs(acc - exact) <= 1e-12 * (1.0 + std::abs(exact)));
        return;
      }
      for (int e = 0; e <= remaining; ++e) {
        expo[coord] = e;
        visit(coord + 1, remaining - e);
      }
      expo[coord] = 0;
    };
    visit(0, order);
  }
}

TEST_CASE("second moment on S^2 equals 4 pi / 3") {
  const SphereQuadrature q = sphere_quadrature(2, 6);
  double acc = 0.0;
  for (size_t i = 0; i < q.nodes.size(); ++i) acc += q.weights[i] * q.nodes[i][0] * q.nodes[i][0];
  CHECK(acc == doctest::Approx(4.0 * oracle::kPi / 3.0).epsilon(1e-13));
}

TEST_CASE("adaptive integration of smooth profiles") {
  const double got = integrate_adaptive([](double x) { return std::exp(-x); }, 0.0, 20.0, 1e-12);
  CHECK(got == doctest::Approx(1.0 - std::exp(-20.0)).epsilon(1e-11));
}

TEST_CASE("radial integrals of known profiles") {
  // Gaussian in the plane: vol(S^1) int r e^{-r^2} dr = pi
  const double gauss2 = radial_integral([](double r) { return std::exp(-r * r); }, 2);
  CHECK(gauss2 == doctest::Approx(oracle::kPi).epsilon(1e-10));

  // (2/(1+r^2))^2 in n = 2 integrates to vol(S^2) = 4 pi
  const double vol2 = radial_integral([](double r) { return std::pow(2.0 / (1.0 + r * r), 2); }, 2);
  CHECK(vol2 == doctest::Approx(4.0 * oracle::kPi).epsilon(1e-10));

  // (3/(1+r^2))^3 in n = 3 integrates to (3/2)^3 vol(S^3) = 27 pi^2 / 4
  const double mass3 = radial_integral([](double r) { return std::pow(3.0 / (1.0 + r * r), 3); }, 3);
  CHECK(mass3 == doctest::Approx(27.0 * oracle::kPi * oracle::kPi / 4.0).epsilon(1e-10));
}

TEST_CASE("radial integral agrees with a doubled-resolution run") {
  const auto f = [](double r) { return std::pow(3.0 / (1.0 + r * r), 3); };
  const double coarse = radial_integral(f, 3, 1e-10);
  const double fine = radial_integral(f, 3, 1e-13);
  CHECK(std::abs(coarse - fine) <= 1e-9 * std::abs(fine));
}

TEST_CASE("radial integral rejects non-decaying profiles") {
  CHECK_THROWS_AS(radial_integral([](double r) { return 1.0 / (1.0 + r); }, 3),
                  std::runtime_error);
}
