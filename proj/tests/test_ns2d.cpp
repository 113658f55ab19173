#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "penalfr/ns2d/diagnostics.hpp"
#include "penalfr/ns2d/simulation.hpp"

using namespace penalfr;
using namespace penalfr::ns;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> uniform_edges(double lo, double hi, int n) {
  std::vector<double> e(n + 1);
  for (int i = 0; i <= n; ++i) e[i] = lo + (hi - lo) * i / n;
  return e;
}

template <class F>
FlowField fill(const CartesianMesh& m, F&& f) {
  FlowField U(m.n_elements(), m.points_per_element());
  for (int e = 0; e < m.n_elements(); ++e) {
    for (int p = 0; p < m.points_per_element(); ++p) U.set_state(e * m.points_per_element() + p, f(m.x(e, p), m.y(e, p)));
  }
  return U;
}

State totals(const CartesianMesh& m, const FlowField& U) {
  State s{};
  for (int e = 0; e < m.n_elements(); ++e) {
    for (int p = 0; p < m.points_per_element(); ++p) {
      for (int v = 0; v < kNumVars; ++v) s[v] += m.weight(e, p) * U.at(e, v, p);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("stretched axis: uniform core, geometric sides, exact domain edges") {
  AxisSpec s{-0.5, 0.5, -10.0, 20.0, 0.1};
  const auto e = build_axis(s, 1.1);
  CHECK(e.front() == doctest::Approx(-10.0).epsilon(1e-14));
  CHECK(e.back() == doctest::Approx(20.0).epsilon(1e-14));
  int core = 0;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    if (e[i] >= -0.5 - 1e-12 && e[i + 1] <= 0.5 + 1e-12) {
      CHECK(e[i + 1] - e[i] == doctest::Approx(0.1).epsilon(1e-12));
      ++core;
    }
  }
  CHECK(core == 10);
  // Constant growth factor on each side.
  const std::size_t last = e.size() - 1;
  const double r1 = (e[last] - e[last - 1]) / (e[last - 1] - e[last - 2]);
  const double r2 = (e[last - 3] - e[last - 4]) / (e[last - 4] - e[last - 5]);
  CHECK(r1 == doctest::Approx(r2).epsilon(1e-12));
  CHECK(r1 > 1.0);
  CHECK_THROWS_AS(build_axis(s, 0.9), std::invalid_argument);

  const int target = static_cast<int>(e.size()) - 1;
  const double r = ratio_for_count(s, target);
  CHECK(static_cast<int>(build_axis(s, r).size()) - 1 == target);
}

TEST_CASE("mesh counts, geometry and hash") {
  const CartesianMesh m(uniform_edges(0.0, 2.0, 4), uniform_edges(-1.0, 1.0, 3), 2);
  CHECK(m.n_elements() == 12);
  CHECK(m.points_per_element() == 9);
  CHECK(m.n_points() == 108);
  double area = 0.0;
  for (int e = 0; e < m.n_elements(); ++e) {
    for (int p = 0; p < 9; ++p) area += m.weight(e, p);
  }
  CHECK(area == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(m.neighbors(m.element(0, 0))[0] == -1);
  CHECK(m.neighbors(m.element(1, 1))[3] == m.element(1, 2));

  const CartesianMesh same(uniform_edges(0.0, 2.0, 4), uniform_edges(-1.0, 1.0, 3), 2);
  const CartesianMesh other(uniform_edges(0.0, 2.0, 4), uniform_edges(-1.0, 1.0, 3), 3);
  const CartesianMesh per(uniform_edges(0.0, 2.0, 4), uniform_edges(-1.0, 1.0, 3), 2, true);
  CHECK(same.hash() == m.hash());
  CHECK(other.hash() != m.hash());
  CHECK(per.hash() != m.hash());
  CHECK(per.neighbors(per.element(0, 0))[0] == per.element(3, 0));
  CHECK_THROWS_AS(CartesianMesh({0.0, 0.0, 1.0}, {0.0, 1.0}, 2), std::invalid_argument);
}

TEST_CASE("Rusanov flux against a hand-written local Lax-Friedrichs flux") {
  GasModel g;
  g.Mach = 0.3;
  const State L = g.conserved(1.1, 0.9, 0.2, 8.0);
  const State R = g.conserved(0.95, 1.05, -0.1, 7.6);
  const double nx = 0.6, ny = 0.8;
  auto flux = [&](double rho, double u, double v, double p) {
    const double un = u * nx + v * ny;
    const double E = p / 0.4 + 0.5 * rho * (u * u + v * v);
    return State{rho * un, rho * u * un + p * nx, rho * v * un + p * ny, (E + p) * un};
  };
  const State fl = flux(1.1, 0.9, 0.2, 8.0), fr = flux(0.95, 1.05, -0.1, 7.6);
  const double s = std::max(std::abs(0.9 * nx + 0.2 * ny) + std::sqrt(1.4 * 8.0 / 1.1),
                            std::abs(1.05 * nx - 0.1 * ny) + std::sqrt(1.4 * 7.6 / 0.95));
  const State F = rusanov_flux(g, L, R, nx, ny);
  for (int v = 0; v < 4; ++v) CHECK(F[v] == doctest::Approx(0.5 * (fl[v] + fr[v]) - 0.5 * s * (R[v] - L[v])).epsilon(1e-13));
  // Consistency.
  const State Fc = rusanov_flux(g, L, L, nx, ny);
  for (int v = 0; v < 4; ++v) CHECK(Fc[v] == doctest::Approx(fl[v]).epsilon(1e-14));
  CHECK_THROWS_AS(rusanov_flux(g, {-1.0, 0, 0, 1}, R, nx, ny), std::domain_error);
}

TEST_CASE("far-field ghost returns the free stream for a free-stream interior") {
  GasModel g;
  const State f = g.free_stream();
  for (auto n : {std::array<double, 2>{1, 0}, {-1, 0}, {0, 1}, {0.6, -0.8}}) {
    const State gh = farfield_ghost(g, f, f, n[0], n[1]);
    for (int v = 0; v < 4; ++v) CHECK(gh[v] == doctest::Approx(f[v]).epsilon(1e-13));
  }
}

TEST_CASE("viscous flux of a simple shear") {
  GasModel g;
  g.Re = 50.0;
  const State U = g.conserved(1.0, 0.0, 0.0, 10.0);
  // d(rho u)/dy = 2 at rho = 1, zero velocity: tau_xy = mu * 2.
  const State Uy{0.0, 2.0, 0.0, 0.0};
  const State F = viscous_flux(g, U, State{}, Uy, 0.0, 1.0);
  CHECK(F[0] == 0.0);
  CHECK(F[1] == doctest::Approx(2.0 / 50.0).epsilon(1e-14));
  CHECK(std::abs(F[2]) < 1e-15);
}

TEST_CASE("free stream is preserved on a stretched mesh") {
  MeshSpec spec;
  spec.x = {-0.5, 0.5, -5.0, 8.0, 0.1};
  spec.y = {-0.5, 0.5, -5.0, 5.0, 0.1};
  spec.stretch = 1.2;
  const auto mesh = build_mesh(spec, 3);
  GasModel g;
  g.alpha_deg = 3.0;
  NavierStokes2D s(mesh, g);
  const State f = g.free_stream();
  auto U = s.uniform_field(f);
  for (int k = 0; k < 5; ++k) s.rk_step(U, 4e-4, TimeScheme::lserk);
  for (int k = 0; k < 5; ++k) s.rk_step(U, 4e-4, TimeScheme::rk3);
  double err = 0.0;
  for (std::size_t p = 0; p < U.n_points(); ++p) {
    const State u = U.state(p);
    for (int v = 0; v < 4; ++v) err = std::max(err, std::abs(u[v] - f[v]) / std::max(1.0, std::abs(f[v])));
  }
  CHECK(err < 1e-12);
}

TEST_CASE("gradients are exact for linear fields away from the boundary") {
  const CartesianMesh m(uniform_edges(-1.0, 1.0, 6), uniform_edges(-1.0, 1.0, 5), 2);
  GasModel g;
  NavierStokes2D s(m, g);
  const auto U = fill(m, [](double x, double y) { return State{1.0 + 0.1 * x - 0.05 * y, 0.3 * x, 0.2 + 0.4 * y, 20.0 + x - y}; });
  auto Ux = s.make_field(), Uy = s.make_field();
  s.gradients(U, Ux, Uy);
  const State dx{0.1, 0.3, 0.0, 1.0}, dy{-0.05, 0.0, 0.4, -1.0};
  for (int e = 0; e < m.n_elements(); ++e) {
    const int i = m.ei(e), j = m.ej(e);
    if (i == 0 || j == 0 || i == m.nx() - 1 || j == m.ny() - 1) continue;
    for (int p = 0; p < m.points_per_element(); ++p) {
      for (int v = 0; v < 4; ++v) {
        CHECK(std::abs(Ux.at(e, v, p) - dx[v]) < 1e-12);
        CHECK(std::abs(Uy.at(e, v, p) - dy[v]) < 1e-12);
      }
    }
  }
}

TEST_CASE("periodic gradients converge at least at order P") {
  for (int P : {1, 2, 3}) {
    double prev = 0.0;
    for (int n : {8, 16, 32}) {
      const CartesianMesh m(uniform_edges(0.0, 2 * kPi, n), uniform_edges(0.0, 2 * kPi, n), P, true, true);
      GasModel g;
      NavierStokes2D s(m, g);
      const auto U = fill(m, [](double x, double y) { return State{1.0 + 0.1 * std::sin(x) * std::cos(y), 0, 0, 20.0}; });
      auto Ux = s.make_field(), Uy = s.make_field();
      s.gradients(U, Ux, Uy);
      double err = 0.0;
      for (int e = 0; e < m.n_elements(); ++e) {
        for (int p = 0; p < m.points_per_element(); ++p) {
          const double d = Ux.at(e, 0, p) - 0.1 * std::cos(m.x(e, p)) * std::cos(m.y(e, p));
          err += m.weight(e, p) * d * d;
        }
      }
      err = std::sqrt(err);
      if (prev > 0.0) CHECK(std::log2(prev / err) > P - 0.25);
      prev = err;
    }
  }
}

TEST_CASE("periodic mesh conserves mass, momentum and energy") {
  const CartesianMesh m(uniform_edges(0.0, 2.0, 5), uniform_edges(0.0, 2.0, 4), 3, true, true);
  GasModel g;
  g.Re = 20.0;
  NavierStokes2D s(m, g);
  auto U = fill(m, [&](double x, double y) {
    return g.conserved(1.0 + 0.1 * std::sin(kPi * x), 1.0 + 0.2 * std::cos(kPi * y), 0.1 * std::sin(kPi * (x + y)),
                       g.p_inf() * (1.0 + 0.05 * std::cos(kPi * x)));
  });
  const State before = totals(m, U);
  for (int k = 0; k < 20; ++k) s.rk_step(U, 1e-3, TimeScheme::lserk);
  const State after = totals(m, U);
  for (int v = 0; v < 4; ++v) CHECK(std::abs(after[v] - before[v]) < 1e-12 * std::max(1.0, std::abs(before[v])));
}

TEST_CASE("viscous shear wave decays at nu k^2") {
  // v = eps sin(x), u = 0, uniform rho and p: exact incompressible decay,
  // compressibility enters only at O(eps^2).
  const CartesianMesh m(uniform_edges(0.0, 2 * kPi, 12), uniform_edges(0.0, 1.0, 1), 3, true, true);
  GasModel g;
  g.Re = 10.0;
  g.Mach = 0.2;
  NavierStokes2D s(m, g);
  const double eps = 1e-3;
  auto U = fill(m, [&](double x, double) { return g.conserved(1.0, 0.0, eps * std::sin(x), g.p_inf()); });
  auto amplitude = [&](const FlowField& F) {
    double num = 0.0, den = 0.0;
    for (int e = 0; e < m.n_elements(); ++e) {
      for (int p = 0; p < m.points_per_element(); ++p) {
        const double sn = std::sin(m.x(e, p));
        num += m.weight(e, p) * F.at(e, 2, p) / F.at(e, 0, p) * sn;
        den += m.weight(e, p) * sn * sn;
      }
    }
    return num / den;
  };
  const double t = 1.0, dt = 2e-3;
  for (int k = 0; k < static_cast<int>(std::lround(t / dt)); ++k) s.rk_step(U, dt, TimeScheme::lserk);
  const double rate = -std::log(amplitude(U) / eps) / t;
  CHECK(rate == doctest::Approx(1.0 / g.Re).epsilon(0.01));
}

TEST_CASE("penalization half-step scales solid momentum by (1 - dt / (2 eta))") {
  const CartesianMesh m(uniform_edges(-1.0, 1.0, 4), uniform_edges(-1.0, 1.0, 4), 2);
  GasModel g;
  ImmersedBody body;
  body.mask = body_mask(m, {mask::Geometry::circle, {0.0, 0.0}, 1.0});
  body.pen = mask::Penalization::with_eta(1e-2);
  body.initialise({0.0, 0.0});
  REQUIRE(!body.solid_points.empty());
  NavierStokes2D s(m, g);
  auto U = s.uniform_field(g.conserved(1.2, 0.8, -0.3, g.p_inf()));
  const auto before = U;
  const double dt = 4e-3;
  const auto imp = penalization_half_step(m, U, dt, body);
  const double f = 1.0 - dt / (2.0 * 1e-2);
  double expect_fx = 0.0;
  const std::size_t np = m.points_per_element();
  for (std::size_t pt : body.solid_points) {
    CHECK(U.at(pt, 1) == doctest::Approx(f * before.at(pt, 1)).epsilon(1e-14));
    CHECK(U.at(pt, 2) == doctest::Approx(f * before.at(pt, 2)).epsilon(1e-14));
    CHECK(U.at(pt, 0) == before.at(pt, 0));
    const State b = before.state(pt);
    const double ke = 0.5 * (b[1] * b[1] + b[2] * b[2]) / b[0];
    CHECK(U.at(pt, 3) == doctest::Approx(b[3] - dt / (2.0 * 1e-2) * ke).epsilon(1e-14));
    expect_fx += m.weight(static_cast<int>(pt / np), static_cast<int>(pt % np)) * (f - 1.0) * before.at(pt, 1);
  }
  CHECK(imp.fx == doctest::Approx(expect_fx).epsilon(1e-12));
  CHECK(U.state(0) == before.state(0));
}

TEST_CASE("force coefficients rotate with the incidence") {
  const auto c0 = to_coefficients(0.3, 0.1, 2.0, 0.0);
  CHECK(c0.cd == doctest::Approx(0.3));
  CHECK(c0.cl == doctest::Approx(0.1));
  const auto c90 = to_coefficients(0.3, 0.1, 1.0, 90.0);
  CHECK(c90.cd == doctest::Approx(0.2));
  CHECK(c90.cl == doctest::Approx(-0.6));
  CHECK_THROWS_AS(to_coefficients(1.0, 1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("time series statistics and shedding frequency") {
  std::vector<double> s, whole;
  const double dt = 0.05;
  for (int i = 0; i < 4000; ++i) s.push_back(1.0 + 2.0 * std::sin(2 * kPi * 0.165 * i * dt));
  // Twenty whole periods in the retained half.
  for (int i = 0; i < 4000; ++i) whole.push_back(1.0 + 2.0 * std::sin(2 * kPi * 0.2 * i * dt));
  const auto st = series_stats(whole, 0.5);
  CHECK(st.mean == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(st.amplitude == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(st.rms == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
  CHECK(strouhal(s, dt, 1.0, 1.0) == doctest::Approx(0.165).epsilon(0.001 / 0.165));
  CHECK(strouhal(s, dt, 2.0, 1.0) == doctest::Approx(0.33).epsilon(0.002 / 0.33));
  CHECK_THROWS_AS(strouhal(std::vector<double>(20, 1.0), dt, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(strouhal(std::vector<double>(400, 1.0), dt, 1.0, 1.0), std::runtime_error);
}

TEST_CASE("probes snap to the nearest solution point") {
  const CartesianMesh m(uniform_edges(0.0, 1.0, 2), uniform_edges(0.0, 1.0, 2), 1);
  const auto pr = locate_probe(m, 0.7, 0.2);
  double best = 1e9;
  for (int e = 0; e < m.n_elements(); ++e) {
    for (int p = 0; p < 4; ++p) best = std::min(best, std::hypot(m.x(e, p) - 0.7, m.y(e, p) - 0.2));
  }
  CHECK(std::hypot(pr.snapped_x - 0.7, pr.snapped_y - 0.2) == doctest::Approx(best));
  CHECK(m.x(pr.element, pr.point) == pr.snapped_x);
  CHECK_THROWS_AS(locate_probe(m, 1.5, 0.5), std::out_of_range);

  GasModel g;
  NavierStokes2D s(m, g);
  const auto U = s.uniform_field(g.conserved(2.0, 0.5, -0.25, 10.0));
  const auto uv = probe_sample(U, pr);
  CHECK(uv[0] == doctest::Approx(0.5));
  CHECK(uv[1] == doctest::Approx(-0.25));
}

TEST_CASE("positivity check names the offending point") {
  const CartesianMesh m(uniform_edges(0.0, 1.0, 2), uniform_edges(0.0, 1.0, 2), 1);
  GasModel g;
  NavierStokes2D s(m, g);
  auto U = s.uniform_field(g.free_stream());
  CHECK_NOTHROW(s.check_positivity(U));
  U.at(2, 0, 3) = -1.0;
  try {
    s.check_positivity(U);
    FAIL("expected a PositivityError");
  } catch (const PositivityError& e) {
    CHECK(e.element() == 2);
    CHECK(e.point() == 3);
    CHECK(e.x() == m.x(2, 3));
  }
}

TEST_CASE("simulation of a small cylinder records forces and probes") {
  NsCase c;
  c.mesh.x = {-0.6, 0.6, -3.0, 5.0, 0.1};
  c.mesh.y = {-0.6, 0.6, -3.0, 3.0, 0.1};
  c.mesh.stretch = 1.3;
  c.order = 1;
  c.pen = mask::Penalization::with_eta(1e-3);
  c.sfd = sfd::SfdParams::with(1e3, 100.0);
  c.dt = 1e-3;
  c.t_final = 0.0105;
  c.record_every = 2;
  c.probes = {{0.0, 0.0}, {2.0, 0.5}};
  NsSimulation sim(c);
  CHECK(!sim.body().solid_points.empty());
  sim.run();
  CHECK(sim.time() == doctest::Approx(0.0105).epsilon(1e-12));
  CHECK(sim.step_index() == 11);
  CHECK(sim.history().t.size() == 5);
  CHECK(sim.history().probes.size() == 2);
  // Impulsive start: the body feels a positive drag. The alternating LDG
  // traces are not mirror symmetric, so the lift is small but not zero.
  CHECK(sim.last_forces().cd > 0.0);
  CHECK(std::abs(sim.last_forces().cl) < 1e-3 * sim.last_forces().cd);

  c.dt = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
