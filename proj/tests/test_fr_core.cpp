#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "penalfr/fr_core.hpp"

using namespace penalfr::fr;

TEST_CASE("three and four point Gauss rules match the closed forms") {
  const auto g3 = gauss_legendre(3);
  CHECK(g3.nodes[0] == doctest::Approx(-std::sqrt(0.6)).epsilon(1e-15));
  CHECK(std::abs(g3.nodes[1]) < 1e-15);
  CHECK(g3.weights[0] == doctest::Approx(5.0 / 9.0).epsilon(1e-15));
  CHECK(g3.weights[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));

  const auto g4 = gauss_legendre(4);
  const double inner = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
  const double outer = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
  CHECK(g4.nodes[0] == doctest::Approx(-outer).epsilon(1e-14));
  CHECK(g4.nodes[1] == doctest::Approx(-inner).epsilon(1e-14));
  CHECK(g4.weights[1] == doctest::Approx((18.0 + std::sqrt(30.0)) / 36.0).epsilon(1e-14));
  CHECK(g4.weights[0] == doctest::Approx((18.0 - std::sqrt(30.0)) / 36.0).epsilon(1e-14));
}

TEST_CASE("Gauss rules integrate x^(2n-1) and x^(2n-2) exactly") {
  for (int n = 1; n <= 10; ++n) {
    const auto g = gauss_legendre(n);
    double s_odd = 0.0, s_even = 0.0, s_w = 0.0;
    for (int i = 0; i < n; ++i) {
      s_odd += g.weights[i] * std::pow(g.nodes[i], 2 * n - 1);
      s_even += g.weights[i] * std::pow(g.nodes[i], 2 * n - 2);
      s_w += g.weights[i];
    }
    CHECK(std::abs(s_odd) < 1e-13);
    CHECK(s_even == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-13));
    CHECK(s_w == doctest::Approx(2.0).epsilon(1e-14));
    for (int i = 1; i < n; ++i) CHECK(g.nodes[i] > g.nodes[i - 1]);
  }
}

TEST_CASE("Legendre values against the explicit low-order polynomials") {
  for (double x : {-0.9, -0.3, 0.0, 0.41, 1.0}) {
    CHECK(legendre(2, x).value == doctest::Approx(0.5 * (3 * x * x - 1)).epsilon(1e-15));
    CHECK(legendre(3, x).value == doctest::Approx(0.5 * (5 * x * x * x - 3 * x)).epsilon(1e-15));
    CHECK(legendre(3, x).derivative == doctest::Approx(0.5 * (15 * x * x - 3)).epsilon(1e-14));
  }
}

TEST_CASE("differentiation matrix is exact for polynomials up to degree P") {
  for (int P = 0; P <= 8; ++P) {
    const NodalBasis b(P);
    for (int k = 0; k <= P; ++k) {
      Eigen::VectorXd u(P + 1), du(P + 1);
      for (int i = 0; i <= P; ++i) {
        const double r = b.nodes()[i];
        u(i) = std::pow(r, k);
        du(i) = k == 0 ? 0.0 : k * std::pow(r, k - 1);
      }
      CHECK((b.diff_matrix() * u - du).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
}

TEST_CASE("boundary interpolation and barycentric evaluation reproduce polynomials") {
  const NodalBasis b(4);
  Eigen::VectorXd u(5);
  auto f = [](double r) { return 1.0 - 2.0 * r + 0.5 * r * r * r - r * r * r * r; };
  for (int i = 0; i < 5; ++i) u(i) = f(b.nodes()[i]);
  CHECK(b.interp_left().dot(u) == doctest::Approx(f(-1.0)).epsilon(1e-13));
  CHECK(b.interp_right().dot(u) == doctest::Approx(f(1.0)).epsilon(1e-13));
  CHECK(b.evaluate(0.37).dot(u) == doctest::Approx(f(0.37)).epsilon(1e-13));
  // Partition of unity.
  CHECK(b.evaluate(-0.61).sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Radau correction functions hit their end values") {
  for (int P = 0; P <= 6; ++P) {
    CHECK(correction_left(P, -1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(correction_left(P, 1.0)) < 1e-14);
    CHECK(std::abs(correction_right(P, -1.0)) < 1e-14);
    CHECK(correction_right(P, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(correction_left(P, 0.3) == doctest::Approx(correction_right(P, -0.3)).epsilon(1e-14));
  }
}

TEST_CASE("DG-recovering correction gradients equal the lifted boundary rows") {
  // With Gauss solution points the DG lifting gives dg_L/dr(r_i) = -l_i(-1) / w_i
  // and dg_R/dr(r_i) = l_i(+1) / w_i.
  for (int P = 0; P <= 7; ++P) {
    const NodalBasis b(P);
    const auto c = build_correction_gradients(b);
    for (int i = 0; i <= P; ++i) {
      CHECK(c.left(i) == doctest::Approx(-b.interp_left()(i) / b.weights()[i]).epsilon(1e-11));
      CHECK(c.right(i) == doctest::Approx(b.interp_right()(i) / b.weights()[i]).epsilon(1e-11));
    }
  }
}

TEST_CASE("element operators annihilate constants and differentiate a global linear field") {
  const double h = 0.05, c = 1.3;
  for (int P = 0; P <= 5; ++P) {
    for (double lambda : {0.0, 0.5, 1.0}) {
      const NodalBasis b(P);
      const auto ops = build_element_operators(b, build_correction_gradients(b), h, c, lambda);
      const Eigen::VectorXd one = Eigen::VectorXd::Ones(P + 1);
      CHECK(((ops.L + ops.C + ops.R) * one).cwiseAbs().maxCoeff() < 1e-11);
      if (P >= 1) {
        // u = x on elements n-1, n, n+1 centred at -h, 0, h.
        Eigen::VectorXd um(P + 1), u0(P + 1), up(P + 1);
        for (int i = 0; i <= P; ++i) {
          const double xr = 0.5 * h * b.nodes()[i];
          um(i) = xr - h;
          u0(i) = xr;
          up(i) = xr + h;
        }
        const Eigen::VectorXd d = ops.L * um + ops.C * u0 + ops.R * up;
        CHECK((d.array() + c).abs().maxCoeff() < 1e-10);
      }
    }
  }
  CHECK_THROWS_AS(build_element_operators(NodalBasis(2), build_correction_gradients(2), 0.0, 1.0, 1.0),
                  std::invalid_argument);
}
