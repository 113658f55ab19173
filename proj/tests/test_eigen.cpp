#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "penalfr/advect1d.hpp"
#include "penalfr/eigensolution.hpp"

using namespace penalfr;
using namespace penalfr::eigensolution;

namespace {

AnalysisCase periodic(int N, int P) {
  AnalysisCase c;
  c.setup.N = N;
  c.setup.P = P;
  c.setup.slab_elements = 0;
  c.immersed = false;
  return c;
}

}  // namespace

TEST_CASE("P = 0 periodic operator has the first-order upwind spectrum") {
  const int N = 12;
  const double h = 2.0 / N, k = 1.7;
  const auto op = assemble(periodic(N, 0), k);
  const auto dec = decompose(op.matrix, false);
  std::vector<bool> used(N, false);
  for (int m = 0; m < N; ++m) {
    const Complex expect = -(1.0 / h) * (1.0 - std::exp(Complex(0.0, -(k * 2.0 + 2.0 * std::numbers::pi * m) / N)));
    double best = 1e300;
    int arg = -1;
    for (int j = 0; j < N; ++j) {
      if (!used[j] && std::abs(dec.values(j) - expect) < best) {
        best = std::abs(dec.values(j) - expect);
        arg = j;
      }
    }
    REQUIRE(arg >= 0);
    used[arg] = true;
    CHECK(best < 1e-11);
  }
}

TEST_CASE("eigen decomposition residual stays below 1e-10") {
  AnalysisCase c;
  c.penalization = mask::Penalization::with_eta(1e-3);
  c.sfd = sfd::SfdParams::with(1e3, 1.0);
  const auto op = assemble(c, bloch_wavenumber(c.setup, 0.9, true));
  CHECK(op.matrix.rows() == 40 * 4 + 4);
  const auto dec = decompose(op.matrix, true);
  CHECK(dec.max_residual < 1e-10);
  CHECK_THROWS_AS(decompose(Eigen::MatrixXcd(2, 3)), std::invalid_argument);
}

TEST_CASE("physical mode of the plain periodic scheme is nearly exact at low wavenumber") {
  const auto c = periodic(40, 3);
  const std::vector<double> ks{0.1, 0.2, 0.4};
  const auto s = semi_discrete_sweep(c, ks);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    CHECK(std::abs(s.dispersion(i) - ks[i]) < 1e-5);
    CHECK(s.dissipation(i) <= 1e-12);
    CHECK(std::abs(s.dissipation(i)) < 1e-5);
    CHECK(s.physical[i].projection > 0.99);
  }
}

TEST_CASE("physical-mode eigenvalue predicts the time-domain decay and phase") {
  // sin(k_hat (x + 1)) is periodic on [-1, 1] for k_hat = m pi. Run the scheme
  // and track the Fourier coefficient at k_hat: its log-magnitude slope and
  // unwrapped phase rate must match the physical-mode eigenvalue.
  advect::AdvectionRun r;
  r.N = 40;
  r.P = 3;
  r.slab_elements = 0;
  const int m = 32;
  r.k_nondim = m * std::numbers::pi * r.h() / (r.P + 1);
  r.dt = 1e-4;
  r.t_final = 1.0;
  r.snapshot_every = 100;
  const auto res = advect::run(r);
  REQUIRE(res.history.size() >= 90);

  const double kh = r.k_hat();
  auto project = [&](const std::vector<double>& u) {
    Complex a(0.0, 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) a += u[i] * std::exp(Complex(0.0, -kh * (res.x[i] + 1.0)));
    return a;
  };
  // Least-squares slope of log|a| and accumulated phase over t >= 0.3, after
  // the non-physical components have died out.
  double st = 0, sl = 0, stt = 0, stl = 0, phase = 0.0, t0 = -1.0, t1 = 0.0;
  int n = 0;
  Complex prev(0.0, 0.0);
  for (const auto& snap : res.history) {
    if (snap.t < 0.3 - 1e-12) continue;
    const Complex a = project(snap.u);
    if (t0 < 0.0) {
      t0 = snap.t;
    } else {
      phase += std::arg(a / prev);
    }
    prev = a;
    t1 = snap.t;
    const double l = std::log(std::abs(a));
    st += snap.t;
    sl += l;
    stt += snap.t * snap.t;
    stl += snap.t * l;
    ++n;
  }
  const double measured_decay = (n * stl - st * sl) / (n * stt - st * st);
  const double measured_phase = phase / (t1 - t0);

  const auto s = semi_discrete_sweep(periodic(r.N, r.P), std::vector<double>{r.k_nondim});
  const Complex lam = s.physical[0].eigenvalue;
  CHECK(lam.real() < -1.0);  // the test point must carry real damping
  CHECK(measured_decay == doctest::Approx(lam.real()).epsilon(0.01));
  // The e^{-ik s} coefficient of a real field rotates with the conjugate.
  CHECK(measured_phase == doctest::Approx(lam.imag()).epsilon(0.01));
}

TEST_CASE("RK3 amplification of a scalar is the cubic Taylor polynomial") {
  Eigen::MatrixXcd M(1, 1);
  M(0, 0) = Complex(-2.0, 3.0);
  const double dt = 0.1;
  const Complex z = M(0, 0) * dt;
  const auto A = rk3_amplification(M, dt);
  CHECK(std::abs(A(0, 0) - (1.0 + z + z * z / 2.0 + z * z * z / 6.0)) < 1e-15);
  CHECK_THROWS_AS(fully_discrete_spectrum(assemble(periodic(4, 1), 0.3), 0.0), std::invalid_argument);
}

TEST_CASE("fully-discrete log(g)/dt converges to the semi-discrete eigenvalue at third order") {
  AnalysisCase c;
  c.penalization = mask::Penalization::with_eta(1e-2);
  const std::vector<double> ks{0.5};
  const auto semi = semi_discrete_sweep(c, ks);
  const Complex lam = semi.physical[0].eigenvalue;
  double prev = 0.0;
  for (double dt : {4e-4, 2e-4, 1e-4}) {
    const auto full = fully_discrete_sweep(c, dt, ks);
    const double err = std::abs(full.physical[0].eigenvalue - lam);
    if (prev > 0.0) CHECK(std::log2(prev / err) == doctest::Approx(3.0).epsilon(0.1));
    prev = err;
  }
}

TEST_CASE("solid modes are constant across wavenumbers") {
  AnalysisCase c;
  c.penalization = mask::Penalization::with_eta(1e-3);
  const auto s = semi_discrete_sweep(c, default_wavenumbers(8));
  CHECK(s.solid_modes.size() >= 1);
  for (const auto& sm : s.solid_modes) CHECK(sm.real() < -100.0);
  CHECK_THROWS_AS(find_solid_modes({{Complex(1, 0)}, {Complex(1, 0)}}), std::invalid_argument);
}

TEST_CASE("default wavenumbers") {
  const auto k = default_wavenumbers();
  CHECK(k.size() == 64);
  CHECK(k.front() == doctest::Approx(std::numbers::pi / 64));
  CHECK(k.back() == doctest::Approx(std::numbers::pi));
}

TEST_CASE("penalization-only solid-mode dissipation changes sign inside the search bracket") {
  CriticalSearch s;
  s.dt = 1e-3;
  s.scheme = Scheme::penalization_only;
  CHECK(max_solid_dissipation(s, 0.3 * s.dt) > 0.0);
  CHECK(max_solid_dissipation(s, 0.6 * s.dt) < 0.0);
  const auto r = critical_parameter_search(s);
  CHECK(r.ratio > 0.3);
  CHECK(r.ratio < 0.6);
  CHECK(max_solid_dissipation(s, r.eta_critical * 1.01) < 0.0);
  s.lo_ratio = 1.0;
  s.hi_ratio = 2.0;
  CHECK_THROWS_AS(critical_parameter_search(s), std::runtime_error);
}
