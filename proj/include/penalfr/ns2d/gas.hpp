// Ideal gas with constant viscosity, nondimensionalized on the free stream:
// rho_inf = 1, |V_inf| = 1, p_inf = 1 / (gamma M^2), T = p / rho, mu = 1 / Re.
#pragma once

#include <array>
#include <cmath>

#include "penalfr/field.hpp"

namespace penalfr::ns {

struct GasModel {
  double gamma = 1.4;
  double Re = 100.0;
  double Pr = 0.72;
  double Mach = 0.2;
  double alpha_deg = 0.0;  // free-stream incidence
  bool inviscid = false;

  double mu() const { return inviscid ? 0.0 : 1.0 / Re; }
  /// Thermal conductivity mu Cp / Pr with Cp = gamma / (gamma - 1).
  double kappa() const { return mu() * gamma / ((gamma - 1.0) * Pr); }
  double p_inf() const { return 1.0 / (gamma * Mach * Mach); }
  double pressure(const State& U) const {
    return (gamma - 1.0) * (U[3] - 0.5 * (U[1] * U[1] + U[2] * U[2]) / U[0]);
  }
  double sound_speed(const State& U) const { return std::sqrt(gamma * pressure(U) / U[0]); }
  State conserved(double rho, double u, double v, double p) const {
    return {rho, rho * u, rho * v, p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v)};
  }
  State free_stream() const {
    const double a = alpha_deg * 3.14159265358979323846 / 180.0;
    return conserved(1.0, std::cos(a), std::sin(a), p_inf());
  }
  /// Throws std::invalid_argument for gamma <= 1, Pr <= 0, Mach <= 0 or Re <= 0.
  void validate() const;
};

/// Inviscid flux projected on (nx, ny).
State inviscid_flux(const GasModel& gas, const State& U, double nx, double ny);

/// Rusanov interface flux on the unit normal n pointing from L to R:
/// 0.5 (F(UL) + F(UR)).n - 0.5 s_max (UR - UL). Throws std::domain_error for a
/// non-positive density or pressure.
State rusanov_flux(const GasModel& gas, const State& UL, const State& UR, double nx, double ny);

/// Viscous flux (tau, heat) projected on (nx, ny) from the state and the
/// conserved-variable gradients.
State viscous_flux(const GasModel& gas, const State& U, const State& Ux, const State& Uy, double nx, double ny);

/// Far-field ghost state from one-dimensional Riemann invariants along the
/// outward normal (nx, ny).
State farfield_ghost(const GasModel& gas, const State& interior, const State& freestream, double nx, double ny);

}  // namespace penalfr::ns
