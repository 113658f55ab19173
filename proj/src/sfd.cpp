#include "penalfr/sfd.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace penalfr::sfd {

void SfdParams::validate() const {
  if (!enabled) return;
  if (!(chi_f >= 0.0) || !std::isfinite(chi_f)) throw std::invalid_argument("sfd: chi_f must be >= 0");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("sfd: delta must be > 0");
}

SfdPropagator build_propagator(const SfdParams& params, double dt) {
  if (!(dt >= 0.0)) throw std::invalid_argument("sfd: dt must be >= 0");
  if (!(params.delta > 0.0)) throw std::invalid_argument("sfd: delta must be > 0");
  if (!(params.chi_f >= 0.0)) throw std::invalid_argument("sfd: chi_f must be >= 0");
  const double chi_delta = params.chi_f * params.delta;
  const double rate = params.chi_f + 1.0 / params.delta;
  const double decay = std::exp(-rate * dt);
  const double one_minus_decay = -std::expm1(-rate * dt);
  const double s = 1.0 / (1.0 + chi_delta);

  SfdPropagator p;
  p.dt = dt;
  p.a11 = s * (1.0 + chi_delta * decay);
  p.a12 = s * chi_delta * one_minus_decay;
  p.a21 = s * one_minus_decay;
  p.a22 = s * (chi_delta + decay);
  return p;
}

SfdState sfd_step(const SfdState& state, std::span<const double> phi_of_q, const SfdPropagator& prop) {
  if (phi_of_q.size() != state.q_bar.size()) {
    throw std::invalid_argument("sfd_step: Phi(q) has " + std::to_string(phi_of_q.size()) +
                                " entries but q_bar has " + std::to_string(state.q_bar.size()));
  }
  SfdState next;
  next.q.resize(phi_of_q.size());
  next.q_bar.resize(phi_of_q.size());
  for (std::size_t i = 0; i < phi_of_q.size(); ++i) {
    const double q = phi_of_q[i];
    const double qb = state.q_bar[i];
    next.q[i] = prop.a11 * q + prop.a12 * qb;
    next.q_bar[i] = prop.a21 * q + prop.a22 * qb;
  }
  return next;
}

std::vector<double> init_filtered(std::size_t n_solid_points, std::span<const double> u_s) {
  std::vector<double> q_bar;
  q_bar.reserve(n_solid_points * u_s.size());
  for (std::size_t i = 0; i < n_solid_points; ++i) q_bar.insert(q_bar.end(), u_s.begin(), u_s.end());
  return q_bar;
}

std::vector<double> select_velocities(const FlowField& U, std::span<const std::size_t> solid_points) {
  std::vector<double> q;
  q.reserve(2 * solid_points.size());
  for (const auto pt : solid_points) {
    const double rho = U.at(pt, 0);
    if (!(rho > 0.0)) {
      throw std::domain_error("select_velocities: non-positive density at point " + std::to_string(pt));
    }
    q.push_back(U.at(pt, 1) / rho);
    q.push_back(U.at(pt, 2) / rho);
  }
  return q;
}

void scatter_velocities(std::span<const double> q, FlowField& U, std::span<const std::size_t> solid_points) {
  if (q.size() != 2 * solid_points.size()) {
    throw std::invalid_argument("scatter_velocities: q has " + std::to_string(q.size()) + " entries for " +
                                std::to_string(solid_points.size()) + " solid points");
  }
  for (std::size_t i = 0; i < solid_points.size(); ++i) {
    const auto pt = solid_points[i];
    const double rho = U.at(pt, 0);
    const double mx = U.at(pt, 1);
    const double my = U.at(pt, 2);
    const double ke_old = 0.5 * (mx * mx + my * my) / rho;
    const double u = q[2 * i];
    const double v = q[2 * i + 1];
    U.at(pt, 1) = rho * u;
    U.at(pt, 2) = rho * v;
    U.at(pt, 3) += 0.5 * rho * (u * u + v * v) - ke_old;
  }
}

std::vector<double> select_scalar(std::span<const double> u, std::span<const std::size_t> solid_points) {
  std::vector<double> q;
  q.reserve(solid_points.size());
  for (const auto pt : solid_points) q.push_back(u[pt]);
  return q;
}

void scatter_scalar(std::span<const double> q, std::span<double> u, std::span<const std::size_t> solid_points) {
  if (q.size() != solid_points.size()) throw std::invalid_argument("scatter_scalar: shape mismatch");
  for (std::size_t i = 0; i < solid_points.size(); ++i) u[solid_points[i]] = q[i];
}

}  // namespace penalfr::sfd
