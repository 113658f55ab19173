// Encapsulated selective frequency damping.
//
// The SFD subsystem
//     dq/dt    = -chi_f (q - q_bar)
//     dq_bar/dt = (q - q_bar) / Delta
// is integrated exactly over one step and applied after an arbitrary
// black-box stepper Phi:  (q, q_bar)^{n+1} = exp(L dt) (Phi(q^n), q_bar^n).
// Only velocities at solid points are carried in q.
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "penalfr/field.hpp"

namespace penalfr::sfd {

struct SfdParams {
  bool enabled = false;
  double chi_f = 0.0;  // control coefficient, 1/time
  double delta = 1.0;  // filter width, time

  static SfdParams disabled() { return {}; }
  static SfdParams with(double chi_f, double delta) { return {true, chi_f, delta}; }

  /// Throws std::invalid_argument when enabled with chi_f < 0 or delta <= 0.
  void validate() const;
  double cutoff_frequency() const { return 1.0 / delta; }

  friend bool operator==(const SfdParams&, const SfdParams&) = default;
};

/// exp(L dt) = [[a11, a12], [a21, a22]], each entry multiplying the identity
/// on the q / q_bar blocks.
struct SfdPropagator {
  double a11 = 1.0;
  double a12 = 0.0;
  double a21 = 0.0;
  double a22 = 1.0;
  double dt = 0.0;
};

/// Throws std::invalid_argument for dt < 0 or delta <= 0.
SfdPropagator build_propagator(const SfdParams& params, double dt);

struct SfdState {
  std::vector<double> q;
  std::vector<double> q_bar;

  friend bool operator==(const SfdState&, const SfdState&) = default;
};

/// Returns exp(L dt) (phi_of_q, state.q_bar). Throws std::invalid_argument on
/// a shape mismatch.
SfdState sfd_step(const SfdState& state, std::span<const double> phi_of_q, const SfdPropagator& prop);

/// q_bar at start-up: the target velocity repeated at every solid point,
/// components interleaved.
std::vector<double> init_filtered(std::size_t n_solid_points, std::span<const double> u_s);

/// q = (u, v) at each listed point, ordered by (point, component). Points must
/// be ascending flat indices, which orders them by (element, solution point).
/// Throws std::domain_error for non-positive density.
std::vector<double> select_velocities(const FlowField& U, std::span<const std::size_t> solid_points);

/// Writes velocities q back into the momentum at the solid points and shifts
/// E so that the internal energy is unchanged.
/// Throws std::invalid_argument on a shape mismatch.
void scatter_velocities(std::span<const double> q, FlowField& U, std::span<const std::size_t> solid_points);

/// Scalar variant for the 1D advection unknown.
std::vector<double> select_scalar(std::span<const double> u, std::span<const std::size_t> solid_points);
void scatter_scalar(std::span<const double> q, std::span<double> u, std::span<const std::size_t> solid_points);

}  // namespace penalfr::sfd
