#include "penalfr/ns2d/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <exception>

namespace penalfr::ns {

namespace {

enum class Pass { gradients, fluxes, full };

struct PointFlux {
  State fx;
  State fy;
};

// Total flux (inviscid minus viscous) in both directions at one point.
inline PointFlux point_flux(const GasModel& gas, double mu, double kappa, const double* U, const double* Ux,
                            const double* Uy) {
  const double rho = U[0];
  const double inv = 1.0 / rho;
  const double u = U[1] * inv;
  const double v = U[2] * inv;
  const double g1 = gas.gamma - 1.0;
  const double ke = 0.5 * (u * u + v * v);
  const double p = g1 * (U[3] - rho * ke);
  PointFlux f;
  f.fx = {U[1], U[1] * u + p, U[2] * u, (U[3] + p) * u};
  f.fy = {U[2], U[1] * v, U[2] * v + p, (U[3] + p) * v};
  if (mu > 0.0) {
    const double ux = (Ux[1] - u * Ux[0]) * inv;
    const double uy = (Uy[1] - u * Uy[0]) * inv;
    const double vx = (Ux[2] - v * Ux[0]) * inv;
    const double vy = (Uy[2] - v * Uy[0]) * inv;
    const double T = p * inv;
    const double px = g1 * (Ux[3] - (u * Ux[1] + v * Ux[2]) + ke * Ux[0]);
    const double py = g1 * (Uy[3] - (u * Uy[1] + v * Uy[2]) + ke * Uy[0]);
    const double Tx = (px - T * Ux[0]) * inv;
    const double Ty = (py - T * Uy[0]) * inv;
    const double div = ux + vy;
    const double txx = mu * (2.0 * ux - 2.0 / 3.0 * div);
    const double tyy = mu * (2.0 * vy - 2.0 / 3.0 * div);
    const double txy = mu * (uy + vx);
    f.fx[1] -= txx;
    f.fx[2] -= txy;
    f.fx[3] -= u * txx + v * txy + kappa * Tx;
    f.fy[1] -= txy;
    f.fy[2] -= tyy;
    f.fy[3] -= u * txy + v * tyy + kappa * Ty;
  }
  return f;
}

inline bool admissible(const GasModel& gas, const State& U) {
  if (!(U[0] > 0.0)) return false;
  return gas.pressure(U) > 0.0;
}

}  // namespace

NavierStokes2D::NavierStokes2D(const CartesianMesh& mesh, const GasModel& gas)
    : mesh_(mesh), gas_(gas), freestream_(gas.free_stream()) {
  gas_.validate();
  if (mesh.q() > 8) throw std::invalid_argument("ns2d: polynomial order above 7 is not supported");
  const int Q = mesh.q();
  const std::size_t nxf = static_cast<std::size_t>(mesh.nx() + 1) * mesh.ny() * kNumVars * Q;
  const std::size_t nyf = static_cast<std::size_t>(mesh.ny() + 1) * mesh.nx() * kNumVars * Q;
  for (auto* v : {&xm_, &xp_, &xhat_, &xgx_, &xgy_, &xflux_}) v->assign(nxf, 0.0);
  for (auto* v : {&ym_, &yp_, &yhat_, &ygx_, &ygy_, &yflux_}) v->assign(nyf, 0.0);
  fx_ = make_field();
  fy_ = make_field();
  gx_ = make_field();
  gy_ = make_field();
  stage_ = make_field();
  k_ = make_field();
}

FlowField NavierStokes2D::uniform_field(const State& U) const {
  FlowField f = make_field();
  for (std::size_t pt = 0; pt < f.n_points(); ++pt) f.set_state(pt, U);
  return f;
}

template <int Q>
void NavierStokes2D::rhs_impl(const FlowField& U, FlowField* dUdt, FlowField* Ux, FlowField* Uy) {
  constexpr int NP = Q * Q;
  const int nx = mesh_.nx();
  const int ny = mesh_.ny();
  const bool px = mesh_.periodic_x();
  const bool py = mesh_.periodic_y();
  const Pass pass = dUdt ? Pass::full : (Ux ? Pass::gradients : Pass::fluxes);
  FlowField& GX = Ux ? *Ux : gx_;
  FlowField& GY = Uy ? *Uy : gy_;

  std::array<double, Q * Q> D{};
  std::array<double, Q> lL{}, lR{}, cL{}, cR{};
  {
    const auto& b = mesh_.basis();
    const auto& c = mesh_.correction();
    for (int r = 0; r < Q; ++r) {
      for (int s = 0; s < Q; ++s) D[r * Q + s] = b.diff_matrix()(r, s);
      lL[r] = b.interp_left()(r);
      lR[r] = b.interp_right()(r);
      cL[r] = c.left(r);
      cR[r] = c.right(r);
    }
  }
  auto fidx = [](int f, int v) { return (static_cast<std::size_t>(f) * kNumVars + v) * Q; };
  const double mu = gas_.mu();
  const double kappa = gas_.kappa();

  // Stage 1: solution traces.
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int e = mesh_.element(i, j);
      const int fl = x_face(i, j), fr = right_face(i, j), fb = y_face(i, j), ft = top_face(i, j);
      for (int v = 0; v < kNumVars; ++v) {
        const double* u = U.var_ptr(e, v);
        for (int b = 0; b < Q; ++b) {
          double sl = 0.0, sr = 0.0;
          for (int a = 0; a < Q; ++a) {
            sl += lL[a] * u[b * Q + a];
            sr += lR[a] * u[b * Q + a];
          }
          xp_[fidx(fl, v) + b] = sl;
          xm_[fidx(fr, v) + b] = sr;
        }
        for (int a = 0; a < Q; ++a) {
          double sb = 0.0, st = 0.0;
          for (int b = 0; b < Q; ++b) {
            sb += lL[b] * u[b * Q + a];
            st += lR[b] * u[b * Q + a];
          }
          yp_[fidx(fb, v) + a] = sb;
          ym_[fidx(ft, v) + a] = st;
        }
      }
    }
  }

  // Stage 2: common solution, far-field ghosts on the physical boundary.
  auto ghost_face = [&](std::vector<double>& interior, std::vector<double>& ghost, std::vector<double>& hat,
                        int f, double nxo, double nyo) {
    for (int q = 0; q < Q; ++q) {
      State ui;
      for (int v = 0; v < kNumVars; ++v) ui[v] = interior[fidx(f, v) + q];
      const State g = farfield_ghost(gas_, ui, freestream_, nxo, nyo);
      for (int v = 0; v < kNumVars; ++v) {
        ghost[fidx(f, v) + q] = g[v];
        hat[fidx(f, v) + q] = g[v];
      }
    }
  };
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    const int i_end = px ? nx : nx + 1;
    for (int i = 0; i < i_end; ++i) {
      const int f = x_face(i, j);
      if (!px && i == 0) {
        ghost_face(xp_, xm_, xhat_, f, -1.0, 0.0);
      } else if (!px && i == nx) {
        ghost_face(xm_, xp_, xhat_, f, 1.0, 0.0);
      } else {
        std::memcpy(&xhat_[fidx(f, 0)], &xm_[fidx(f, 0)], sizeof(double) * kNumVars * Q);
      }
    }
  }
  const int j_end = py ? ny : ny + 1;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < j_end; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int f = y_face(i, j);
      if (!py && j == 0) {
        ghost_face(yp_, ym_, yhat_, f, 0.0, -1.0);
      } else if (!py && j == ny) {
        ghost_face(ym_, yp_, yhat_, f, 0.0, 1.0);
      } else {
        std::memcpy(&yhat_[fidx(f, 0)], &ym_[fidx(f, 0)], sizeof(double) * kNumVars * Q);
      }
    }
  }

  // Stage 3: corrected gradients; stage 4: fluxes at solution points and
  // gradient traces for the plus-side viscous flux.
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    const double sy = 2.0 / mesh_.hy(j);
    for (int i = 0; i < nx; ++i) {
      const double sx = 2.0 / mesh_.hx(i);
      const int e = mesh_.element(i, j);
      const int fl = x_face(i, j), fr = right_face(i, j), fb = y_face(i, j), ft = top_face(i, j);
      for (int v = 0; v < kNumVars; ++v) {
        const double* u = U.var_ptr(e, v);
        double* gx = GX.var_ptr(e, v);
        double* gy = GY.var_ptr(e, v);
        for (int b = 0; b < Q; ++b) {
          const double jl = xhat_[fidx(fl, v) + b] - xp_[fidx(fl, v) + b];
          const double jr = xhat_[fidx(fr, v) + b] - xm_[fidx(fr, v) + b];
          for (int a = 0; a < Q; ++a) {
            double d = cL[a] * jl + cR[a] * jr;
            for (int c = 0; c < Q; ++c) d += D[a * Q + c] * u[b * Q + c];
            gx[b * Q + a] = sx * d;
          }
        }
        for (int a = 0; a < Q; ++a) {
          const double jb = yhat_[fidx(fb, v) + a] - yp_[fidx(fb, v) + a];
          const double jt = yhat_[fidx(ft, v) + a] - ym_[fidx(ft, v) + a];
          for (int b = 0; b < Q; ++b) {
            double d = cL[b] * jb + cR[b] * jt;
            for (int c = 0; c < Q; ++c) d += D[b * Q + c] * u[c * Q + a];
            gy[b * Q + a] = sy * d;
          }
        }
      }
      if (pass == Pass::gradients) continue;

      std::array<double, 4> us, uxs, uys;
      for (int p = 0; p < NP; ++p) {
        for (int v = 0; v < kNumVars; ++v) {
          us[v] = U.var_ptr(e, v)[p];
          uxs[v] = GX.var_ptr(e, v)[p];
          uys[v] = GY.var_ptr(e, v)[p];
        }
        const PointFlux f = point_flux(gas_, mu, kappa, us.data(), uxs.data(), uys.data());
        for (int v = 0; v < kNumVars; ++v) {
          fx_.var_ptr(e, v)[p] = f.fx[v];
          fy_.var_ptr(e, v)[p] = f.fy[v];
        }
      }
      if (mu > 0.0) {
        const bool right_bnd = !px && i == nx - 1;
        const bool top_bnd = !py && j == ny - 1;
        for (int v = 0; v < kNumVars; ++v) {
          const double* gx = GX.var_ptr(e, v);
          const double* gy = GY.var_ptr(e, v);
          for (int b = 0; b < Q; ++b) {
            double lx = 0.0, ly = 0.0, rx = 0.0, ry = 0.0;
            for (int a = 0; a < Q; ++a) {
              lx += lL[a] * gx[b * Q + a];
              ly += lL[a] * gy[b * Q + a];
              rx += lR[a] * gx[b * Q + a];
              ry += lR[a] * gy[b * Q + a];
            }
            xgx_[fidx(fl, v) + b] = lx;
            xgy_[fidx(fl, v) + b] = ly;
            if (right_bnd) {
              xgx_[fidx(fr, v) + b] = rx;
              xgy_[fidx(fr, v) + b] = ry;
            }
          }
          for (int a = 0; a < Q; ++a) {
            double bx = 0.0, by = 0.0, tx = 0.0, ty = 0.0;
            for (int b = 0; b < Q; ++b) {
              bx += lL[b] * gx[b * Q + a];
              by += lL[b] * gy[b * Q + a];
              tx += lR[b] * gx[b * Q + a];
              ty += lR[b] * gy[b * Q + a];
            }
            ygx_[fidx(fb, v) + a] = bx;
            ygy_[fidx(fb, v) + a] = by;
            if (top_bnd) {
              ygx_[fidx(ft, v) + a] = tx;
              ygy_[fidx(ft, v) + a] = ty;
            }
          }
        }
      }
    }
  }
  if (pass == Pass::gradients) return;

  // Stage 5: common interface fluxes.
  auto common = [&](const std::vector<double>& m, const std::vector<double>& pl, const std::vector<double>& hat,
                    const std::vector<double>& gxs, const std::vector<double>& gys, std::vector<double>& out, int f,
                    bool boundary, double nxv, double nyv) {
    for (int q = 0; q < Q; ++q) {
      State um, up, uh, gxq, gyq;
      for (int v = 0; v < kNumVars; ++v) {
        um[v] = m[fidx(f, v) + q];
        up[v] = pl[fidx(f, v) + q];
        uh[v] = hat[fidx(f, v) + q];
        gxq[v] = gxs[fidx(f, v) + q];
        gyq[v] = gys[fidx(f, v) + q];
      }
      if (!admissible(gas_, um) || !admissible(gas_, up)) {
        const bool bad_m = !admissible(gas_, um);
        const State& bad = bad_m ? um : up;
        throw PositivityError("ns2d: inadmissible interface state (rho=" + std::to_string(bad[0]) +
                                  ", p=" + std::to_string(gas_.pressure(bad)) + ") on face " + std::to_string(f) +
                                  (nxv != 0.0 ? " (x-normal)" : " (y-normal)"),
                              -1, q, std::nan(""), std::nan(""));
      }
      State flux = rusanov_flux(gas_, um, up, nxv, nyv);
      if (mu > 0.0) {
        const State vf = viscous_flux(gas_, boundary ? uh : up, gxq, gyq, nxv, nyv);
        for (int v = 0; v < kNumVars; ++v) flux[v] -= vf[v];
      }
      for (int v = 0; v < kNumVars; ++v) out[fidx(f, v) + q] = flux[v];
    }
  };
  // Exceptions cannot leave a parallel region; keep the one from the lowest
  // row so the report does not depend on the thread count.
  std::exception_ptr failure;
  int failed_row = -1;
  auto guarded = [&](int row, auto&& body) {
    try {
      body();
    } catch (...) {
#pragma omp critical(penalfr_rhs_failure)
      if (failed_row < 0 || row < failed_row) {
        failed_row = row;
        failure = std::current_exception();
      }
    }
  };
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    guarded(j, [&] {
      const int i_end = px ? nx : nx + 1;
      for (int i = 0; i < i_end; ++i) {
        const bool bnd = !px && (i == 0 || i == nx);
        common(xm_, xp_, xhat_, xgx_, xgy_, xflux_, x_face(i, j), bnd, 1.0, 0.0);
      }
    });
  }
  if (failure) std::rethrow_exception(failure);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < j_end; ++j) {
    guarded(j, [&] {
      for (int i = 0; i < nx; ++i) {
        const bool bnd = !py && (j == 0 || j == ny);
        common(ym_, yp_, yhat_, ygx_, ygy_, yflux_, y_face(i, j), bnd, 0.0, 1.0);
      }
    });
  }
  if (failure) std::rethrow_exception(failure);
  if (pass == Pass::fluxes) return;

  // Stage 6-7: corrected flux divergence.
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    const double sy = 2.0 / mesh_.hy(j);
    for (int i = 0; i < nx; ++i) {
      const double sx = 2.0 / mesh_.hx(i);
      const int e = mesh_.element(i, j);
      const int fl = x_face(i, j), fr = right_face(i, j), fb = y_face(i, j), ft = top_face(i, j);
      for (int v = 0; v < kNumVars; ++v) {
        const double* f = fx_.var_ptr(e, v);
        const double* g = fy_.var_ptr(e, v);
        double* out = dUdt->var_ptr(e, v);
        for (int b = 0; b < Q; ++b) {
          double fl_i = 0.0, fr_i = 0.0;
          for (int a = 0; a < Q; ++a) {
            fl_i += lL[a] * f[b * Q + a];
            fr_i += lR[a] * f[b * Q + a];
          }
          const double jl = xflux_[fidx(fl, v) + b] - fl_i;
          const double jr = xflux_[fidx(fr, v) + b] - fr_i;
          for (int a = 0; a < Q; ++a) {
            double d = cL[a] * jl + cR[a] * jr;
            for (int c = 0; c < Q; ++c) d += D[a * Q + c] * f[b * Q + c];
            out[b * Q + a] = -sx * d;
          }
        }
        for (int a = 0; a < Q; ++a) {
          double gb = 0.0, gt = 0.0;
          for (int b = 0; b < Q; ++b) {
            gb += lL[b] * g[b * Q + a];
            gt += lR[b] * g[b * Q + a];
          }
          const double jb = yflux_[fidx(fb, v) + a] - gb;
          const double jt = yflux_[fidx(ft, v) + a] - gt;
          for (int b = 0; b < Q; ++b) {
            double d = cL[b] * jb + cR[b] * jt;
            for (int c = 0; c < Q; ++c) d += D[b * Q + c] * g[c * Q + a];
            out[b * Q + a] -= sy * d;
          }
        }
      }
    }
  }
}

#define PENALFR_DISPATCH(call)                                                  \
  switch (mesh_.q()) {                                                          \
    case 1: call(1); break;                                                     \
    case 2: call(2); break;                                                     \
    case 3: call(3); break;                                                     \
    case 4: call(4); break;                                                     \
    case 5: call(5); break;                                                     \
    case 6: call(6); break;                                                     \
    case 7: call(7); break;                                                     \
    case 8: call(8); break;                                                     \
    default: throw std::invalid_argument("ns2d: unsupported order");            \
  }

void NavierStokes2D::rhs(const FlowField& U, FlowField& dUdt) {
#define CALL(Qv) rhs_impl<Qv>(U, &dUdt, nullptr, nullptr)
  PENALFR_DISPATCH(CALL)
#undef CALL
}

void NavierStokes2D::gradients(const FlowField& U, FlowField& Ux, FlowField& Uy) {
#define CALL(Qv) rhs_impl<Qv>(U, nullptr, &Ux, &Uy)
  PENALFR_DISPATCH(CALL)
#undef CALL
}

std::array<double, 2> NavierStokes2D::boundary_momentum_flux(const FlowField& U, int i0, int i1, int j0, int j1) {
  if (i0 < 0 || j0 < 0 || i1 > mesh_.nx() || j1 > mesh_.ny() || i0 >= i1 || j0 >= j1) {
    throw std::invalid_argument("boundary_momentum_flux: invalid element block");
  }
  // Fluxes only: dUdt and gradient outputs are not requested.
#define CALL(Qv) rhs_impl<Qv>(U, nullptr, nullptr, nullptr)
  PENALFR_DISPATCH(CALL)
#undef CALL
  const int Q = mesh_.q();
  const auto w = mesh_.basis().weights();
  auto at = [&](const std::vector<double>& arr, int f, int v, int q) {
    return arr[(static_cast<std::size_t>(f) * kNumVars + v) * Q + q];
  };
  std::array<double, 2> out{0.0, 0.0};
  for (int j = j0; j < j1; ++j) {
    const double half = 0.5 * mesh_.hy(j);
    const int fl = x_face(i0, j);
    const int fr = right_face(i1 - 1, j);
    for (int q = 0; q < Q; ++q) {
      for (int v = 1; v <= 2; ++v) out[v - 1] += w[q] * half * (at(xflux_, fr, v, q) - at(xflux_, fl, v, q));
    }
  }
  for (int i = i0; i < i1; ++i) {
    const double half = 0.5 * mesh_.hx(i);
    const int fb = y_face(i, j0);
    const int ft = top_face(i, j1 - 1);
    for (int q = 0; q < Q; ++q) {
      for (int v = 1; v <= 2; ++v) out[v - 1] += w[q] * half * (at(yflux_, ft, v, q) - at(yflux_, fb, v, q));
    }
  }
  return out;
}

void NavierStokes2D::rk_step(FlowField& U, double dt, TimeScheme scheme) {
  auto u = U.raw();
  auto s = stage_.raw();
  auto k = k_.raw();
  const std::size_t n = u.size();
  if (scheme == TimeScheme::rk3) {
    rhs(U, k_);
    for (std::size_t i = 0; i < n; ++i) s[i] = u[i] + dt * k[i];
    rhs(stage_, k_);
    for (std::size_t i = 0; i < n; ++i) s[i] = 0.75 * u[i] + 0.25 * (s[i] + dt * k[i]);
    rhs(stage_, k_);
    for (std::size_t i = 0; i < n; ++i) u[i] = (u[i] + 2.0 * (s[i] + dt * k[i])) / 3.0;
    return;
  }
  static constexpr double a[5] = {0.0, -567301805773.0 / 1357537059087.0, -2404267990393.0 / 2016746695238.0,
                                  -3550918686646.0 / 2091501179385.0, -1275806237668.0 / 842570457699.0};
  static constexpr double b[5] = {1432997174477.0 / 9575080441755.0, 5161836677717.0 / 13612068292357.0,
                                  1720146321549.0 / 2090206949498.0, 3134564353537.0 / 4481467310338.0,
                                  2277821191437.0 / 14882151754819.0};
  // s holds the low-storage register.
  std::fill(s.begin(), s.end(), 0.0);
  for (int st = 0; st < 5; ++st) {
    rhs(U, k_);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = a[st] * s[i] + dt * k[i];
      u[i] += b[st] * s[i];
    }
  }
}

void NavierStokes2D::check_positivity(const FlowField& U) const {
  const std::size_t np = U.points_per_element();
  for (std::size_t e = 0; e < U.n_elements(); ++e) {
    for (std::size_t p = 0; p < np; ++p) {
      const State s{U.at(e, 0, p), U.at(e, 1, p), U.at(e, 2, p), U.at(e, 3, p)};
      const double pr = s[0] > 0.0 ? gas_.pressure(s) : -1.0;
      if (!(s[0] > 0.0) || !(pr > 0.0)) {
        const int ei = static_cast<int>(e), pi = static_cast<int>(p);
        throw PositivityError("ns2d: positivity lost at element " + std::to_string(e) + " point " +
                                  std::to_string(p) + " (x=" + std::to_string(mesh_.x(ei, pi)) +
                                  ", y=" + std::to_string(mesh_.y(ei, pi)) + ", rho=" + std::to_string(s[0]) +
                                  ", p=" + std::to_string(pr) + ")",
                              ei, pi, mesh_.x(ei, pi), mesh_.y(ei, pi));
      }
    }
  }
}

void ImmersedBody::initialise(const std::array<double, 2>& u_s) {
  solid_points = mask.solid_indices();
  sfd_state.q_bar = sfd::init_filtered(solid_points.size(), u_s);
  sfd_state.q.assign(sfd_state.q_bar.size(), 0.0);
}

StepImpulse penalization_half_step(const CartesianMesh& mesh, FlowField& U, double dt, const ImmersedBody& body) {
  StepImpulse imp;
  if (!body.pen.enabled()) return imp;
  const std::size_t np = U.points_per_element();
  for (const auto pt : body.solid_points) {
    const State s = U.state(pt);
    const State src = mask::penalize_ns(s, true, body.pen);
    State out = s;
    for (int v = 0; v < kNumVars; ++v) out[v] += 0.5 * dt * src[v];
    U.set_state(pt, out);
    const double w = mesh.weight(static_cast<int>(pt / np), static_cast<int>(pt % np));
    imp.fx += w * (out[1] - s[1]);
    imp.fy += w * (out[2] - s[2]);
  }
  return imp;
}

StepImpulse strang_step(NavierStokes2D& solver, FlowField& U, double dt, ImmersedBody& body, TimeScheme scheme) {
  const auto& mesh = solver.mesh();
  StepImpulse total = penalization_half_step(mesh, U, dt, body);
  if (body.pen.enabled()) solver.check_positivity(U);
  solver.rk_step(U, dt, scheme);
  solver.check_positivity(U);
  const StepImpulse second = penalization_half_step(mesh, U, dt, body);
  total.fx += second.fx;
  total.fy += second.fy;
  if (body.pen.enabled()) solver.check_positivity(U);

  if (body.sfd.enabled && !body.solid_points.empty()) {
    const std::size_t np = U.points_per_element();
    const auto q = sfd::select_velocities(U, body.solid_points);
    body.sfd_state = sfd::sfd_step(body.sfd_state, q, sfd::build_propagator(body.sfd, dt));
    for (std::size_t k = 0; k < body.solid_points.size(); ++k) {
      const auto pt = body.solid_points[k];
      const double w = mesh.weight(static_cast<int>(pt / np), static_cast<int>(pt % np));
      const double rho = U.at(pt, 0);
      total.fx += w * rho * (body.sfd_state.q[2 * k] - q[2 * k]);
      total.fy += w * rho * (body.sfd_state.q[2 * k + 1] - q[2 * k + 1]);
    }
    sfd::scatter_velocities(body.sfd_state.q, U, body.solid_points);
  }
  return total;
}

}  // namespace penalfr::ns
