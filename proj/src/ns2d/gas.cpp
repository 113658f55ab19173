#include "penalfr/ns2d/gas.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace penalfr::ns {

void GasModel::validate() const {
  if (!(gamma > 1.0)) throw std::invalid_argument("gas: gamma must exceed 1");
  if (!(Pr > 0.0)) throw std::invalid_argument("gas: Pr must be positive");
  if (!(Mach > 0.0)) throw std::invalid_argument("gas: Mach must be positive");
  if (!inviscid && !(Re > 0.0)) throw std::invalid_argument("gas: Re must be positive");
}

State inviscid_flux(const GasModel& gas, const State& U, double nx, double ny) {
  const double rho = U[0];
  const double u = U[1] / rho;
  const double v = U[2] / rho;
  const double p = gas.pressure(U);
  const double vn = u * nx + v * ny;
  return {rho * vn, U[1] * vn + p * nx, U[2] * vn + p * ny, (U[3] + p) * vn};
}

State rusanov_flux(const GasModel& gas, const State& UL, const State& UR, double nx, double ny) {
  const double pl = gas.pressure(UL);
  const double pr = gas.pressure(UR);
  if (!(UL[0] > 0.0) || !(UR[0] > 0.0) || !(pl > 0.0) || !(pr > 0.0)) {
    throw std::domain_error("rusanov_flux: inadmissible state (rho_L=" + std::to_string(UL[0]) +
                            ", rho_R=" + std::to_string(UR[0]) + ", p_L=" + std::to_string(pl) +
                            ", p_R=" + std::to_string(pr) + ")");
  }
  const State fl = inviscid_flux(gas, UL, nx, ny);
  const State fr = inviscid_flux(gas, UR, nx, ny);
  const double sl = std::abs((UL[1] * nx + UL[2] * ny) / UL[0]) + std::sqrt(gas.gamma * pl / UL[0]);
  const double sr = std::abs((UR[1] * nx + UR[2] * ny) / UR[0]) + std::sqrt(gas.gamma * pr / UR[0]);
  const double s = std::max(sl, sr);
  State out;
  for (int k = 0; k < kNumVars; ++k) out[k] = 0.5 * (fl[k] + fr[k]) - 0.5 * s * (UR[k] - UL[k]);
  return out;
}

State viscous_flux(const GasModel& gas, const State& U, const State& Ux, const State& Uy, double nx, double ny) {
  const double mu = gas.mu();
  if (mu == 0.0) return {0.0, 0.0, 0.0, 0.0};
  const double rho = U[0];
  const double u = U[1] / rho;
  const double v = U[2] / rho;
  const double ux = (Ux[1] - u * Ux[0]) / rho;
  const double uy = (Uy[1] - u * Uy[0]) / rho;
  const double vx = (Ux[2] - v * Ux[0]) / rho;
  const double vy = (Uy[2] - v * Uy[0]) / rho;
  const double g1 = gas.gamma - 1.0;
  const double ke = 0.5 * (u * u + v * v);
  const double p = g1 * (U[3] - rho * ke);
  const double T = p / rho;
  const double px = g1 * (Ux[3] - (u * Ux[1] + v * Ux[2]) + ke * Ux[0]);
  const double py = g1 * (Uy[3] - (u * Uy[1] + v * Uy[2]) + ke * Uy[0]);
  const double Tx = (px - T * Ux[0]) / rho;
  const double Ty = (py - T * Uy[0]) / rho;
  const double div = ux + vy;
  const double txx = mu * (2.0 * ux - 2.0 / 3.0 * div);
  const double tyy = mu * (2.0 * vy - 2.0 / 3.0 * div);
  const double txy = mu * (uy + vx);
  const double k = gas.kappa();
  const double fx3 = u * txx + v * txy + k * Tx;
  const double fy3 = u * txy + v * tyy + k * Ty;
  return {0.0, txx * nx + txy * ny, txy * nx + tyy * ny, fx3 * nx + fy3 * ny};
}

State farfield_ghost(const GasModel& gas, const State& interior, const State& freestream, double nx, double ny) {
  const double g = gas.gamma;
  const double rho_i = interior[0];
  const double u_i = interior[1] / rho_i;
  const double v_i = interior[2] / rho_i;
  const double p_i = gas.pressure(interior);
  const double rho_f = freestream[0];
  const double u_f = freestream[1] / rho_f;
  const double v_f = freestream[2] / rho_f;
  const double p_f = gas.pressure(freestream);
  if (!(rho_i > 0.0) || !(p_i > 0.0)) return freestream;
  const double c_i = std::sqrt(g * p_i / rho_i);
  const double c_f = std::sqrt(g * p_f / rho_f);
  const double vn_i = u_i * nx + v_i * ny;
  const double vn_f = u_f * nx + v_f * ny;

  if (vn_i >= c_i) return interior;      // supersonic outflow
  if (vn_f <= -c_f) return freestream;   // supersonic inflow

  const double r_out = vn_i + 2.0 * c_i / (g - 1.0);
  const double r_in = vn_f - 2.0 * c_f / (g - 1.0);
  const double vn = 0.5 * (r_out + r_in);
  const double c = 0.25 * (g - 1.0) * (r_out - r_in);
  double s, ut, vt;
  if (vn > 0.0) {
    s = p_i / std::pow(rho_i, g);
    ut = u_i - vn_i * nx;
    vt = v_i - vn_i * ny;
  } else {
    s = p_f / std::pow(rho_f, g);
    ut = u_f - vn_f * nx;
    vt = v_f - vn_f * ny;
  }
  const double rho = std::pow(c * c / (g * s), 1.0 / (g - 1.0));
  const double p = rho * c * c / g;
  return gas.conserved(rho, ut + vn * nx, vt + vn * ny, p);
}

}  // namespace penalfr::ns
