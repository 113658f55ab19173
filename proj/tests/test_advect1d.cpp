#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "penalfr/advect1d.hpp"
#include "penalfr/fr_core.hpp"

using namespace penalfr;
using namespace penalfr::advect;

namespace {

// Gauss-weighted discrete L2 energy, the norm in which the upwind scheme is
// dissipative.
double energy(const AdvectionRun& r, const std::vector<double>& u) {
  const auto g = fr::gauss_legendre(r.P + 1);
  double e = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) e += g.weights[i % (r.P + 1)] * u[i] * u[i];
  return e;
}

// Negative real root of 1 + z + z^2/2 + z^3/6 = -1, the RK3 limit on the real axis.
double rk3_real_limit() {
  double lo = -3.0, hi = -2.0;
  auto f = [](double z) { return 1.0 + z + z * z / 2.0 + z * z * z / 6.0 + 1.0; };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return -0.5 * (lo + hi);
}

AdvectionRun short_run() {
  AdvectionRun r;
  r.dt = 1e-4;
  r.t_final = 0.3;
  return r;
}

}  // namespace

TEST_CASE("initial condition is zero in the slab and a shifted sine in the fluid") {
  AdvectionRun r;
  const std::vector<double> x{-0.5, 0.01, 0.04, 0.06, 0.7};
  const auto u = initial_condition(r, x);
  const double k = r.k_hat(), d = r.delta();
  CHECK(u[0] == doctest::Approx(std::sin(k * (-0.5 + 2.0 - d))));
  CHECK(u[1] == 0.0);
  CHECK(u[2] == 0.0);
  CHECK(u[3] == doctest::Approx(std::sin(k * (0.06 - d))));
  CHECK(u[4] == doctest::Approx(std::sin(k * (0.7 - d))));
}

TEST_CASE("flow and solid error norms") {
  const std::vector<double> x{-0.5, 0.01, 0.02, 0.3, 0.9};
  const std::vector<double> u{7.0, 1.0, -1.0, 3.0, 4.0};
  CHECK(flow_error(x, u, 0.05) == doctest::Approx(std::sqrt(12.5)));
  CHECK(solid_error(x, u, 0.05) == doctest::Approx(1.0));
  CHECK(solid_error(std::vector<double>{0.5}, std::vector<double>{1.0}, 0.05) == 0.0);
}

TEST_CASE("without a solid the discrete energy never grows") {
  AdvectionRun r = short_run();
  r.slab_elements = 0;
  r.k_nondim = 10.0 * std::numbers::pi * r.h() / (r.P + 1);
  r.snapshot_every = 50;
  const auto res = run(r);
  double prev = energy(r, initial_condition(r, res.x));
  for (const auto& s : res.history) {
    const double e = energy(r, s.u);
    CHECK(e <= prev * (1.0 + 1e-13));
    prev = e;
  }
}

TEST_CASE("a well-resolved wave advects one period with small error") {
  AdvectionRun r;
  r.slab_elements = 0;
  r.k_nondim = 2.0 * std::numbers::pi * r.h() / (r.P + 1);  // k_hat = 2 pi, periodic on [-1, 1]
  r.dt = 1e-3;
  r.t_final = 2.0;
  const auto res = run(r);
  const auto u0 = initial_condition(r, res.x);
  double err = 0.0;
  for (std::size_t i = 0; i < u0.size(); ++i) err = std::max(err, std::abs(res.u[i] - u0[i]));
  CHECK(err < 1e-5);
}

TEST_CASE("the last step is shortened to land on t_final") {
  AdvectionRun r = short_run();
  r.t_final = 0.00035;
  const auto res = run(r);
  CHECK(res.steps == 4);
  CHECK(res.t == doctest::Approx(0.00035).epsilon(1e-14));
  r.t_final = 0.0;
  CHECK(run(r).steps == 0);
}

TEST_CASE("invalid runs are rejected and blow-ups are reported") {
  AdvectionRun r = short_run();
  r.dt = 0.0;
  CHECK_THROWS_AS(run(r), std::invalid_argument);
  r = short_run();
  r.slab_elements = 20;
  CHECK_THROWS_AS(run(r), std::invalid_argument);
  r = short_run();
  r.pen = mask::Penalization::with_eta(1e-4);
  r.dt = 1e-3;
  CHECK_THROWS_AS(run(r), NumericalInstability);
}

TEST_CASE("penalization-only stability limit is set by the stiff real eigenvalue") {
  AdvectionRun r;
  r.pen = mask::Penalization::with_eta(1e-4);
  const double dt = max_stable_dt(r);
  // 1/eta dominates the advective part, so dt_max ~ 2.5127 eta.
  CHECK(rk3_real_limit() == doctest::Approx(2.5127).epsilon(1e-4));
  CHECK(dt == doctest::Approx(rk3_real_limit() * 1e-4).epsilon(0.02));
  CHECK(step_spectral_radius(r, 0.98 * dt, 1.0) <= 1.0 + 1e-9);
  CHECK(step_spectral_radius(r, 1.05 * dt, 0.0) > 1.0);
}

TEST_CASE("the exact SFD propagator does not shrink the advective limit") {
  AdvectionRun r;
  const double plain = max_stable_dt(r);
  r.sfd = sfd::SfdParams::with(1e4, 100.0);
  CHECK(max_stable_dt(r) >= plain * 0.99);
}

TEST_CASE("smaller eta gives a smaller flow error") {
  AdvectionRun r = short_run();
  r.dt = 2e-5;
  r.pen = mask::Penalization::with_eta(1e-3);
  const auto a = run(r);
  r.pen = mask::Penalization::with_eta(1e-4);
  const auto b = run(r);
  const double ea = flow_error(a.x, a.u, r.delta());
  const double eb = flow_error(b.x, b.u, r.delta());
  CHECK(eb < ea);
  CHECK(solid_error(b.x, b.u, r.delta()) < solid_error(a.x, a.u, r.delta()));
}

TEST_CASE("flow error is converged in time at the sweep step") {
  AdvectionRun r = short_run();
  r.pen = mask::Penalization::with_eta(1e-3);
  r.sfd = sfd::SfdParams::with(1e3, 100.0);
  r.dt = 2e-4;
  const auto a = run(r);
  r.dt = 1e-4;
  const auto b = run(r);
  const double ea = flow_error(a.x, a.u, r.delta());
  const double eb = flow_error(b.x, b.u, r.delta());
  CHECK(std::abs(ea - eb) < 1e-3 * eb);
}

TEST_CASE("sweep records failures per row and keeps going") {
  AdvectionRun r = short_run();
  r.t_final = 0.01;
  const std::vector<SweepPoint> pts{{1e-3, std::nullopt, 100.0}, {std::nullopt, 1e3, -1.0}, {std::nullopt, std::nullopt, 100.0}};
  const auto rows = sweep(r, pts, {0.5, 1});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].ok);
  CHECK(rows[0].dt <= 0.5 * rows[0].max_stable_dt * (1.0 + 1e-12));
  CHECK_FALSE(rows[1].ok);
  CHECK_FALSE(rows[1].message.empty());
  CHECK(rows[2].ok);
  CHECK(rows[2].wall_time >= 0.0);
}
