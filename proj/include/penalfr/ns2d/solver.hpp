// Flux reconstruction discretization of the 2D compressible Navier-Stokes
// equations on a CartesianMesh, plus explicit time stepping and the
// Strang-split penalization / encapsulated SFD step.
//
// Interfaces: Rusanov for the inviscid part. LDG with pure alternating traces
// for the viscous part: the common solution is taken from the minus side
// (left / bottom element) and the common viscous flux from the plus side
// (right / top element). On physical boundaries the common solution is the
// far-field ghost state and the viscous flux uses the interior gradient.
#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "penalfr/field.hpp"
#include "penalfr/masking.hpp"
#include "penalfr/ns2d/gas.hpp"
#include "penalfr/ns2d/mesh.hpp"
#include "penalfr/sfd.hpp"

namespace penalfr::ns {

enum class TimeScheme { rk3, lserk };

class PositivityError : public std::runtime_error {
 public:
  PositivityError(const std::string& what, int element, int point, double x, double y)
      : std::runtime_error(what), element_(element), point_(point), x_(x), y_(y) {}
  int element() const { return element_; }
  int point() const { return point_; }
  double x() const { return x_; }
  double y() const { return y_; }

 private:
  int element_, point_;
  double x_, y_;
};

class NavierStokes2D {
 public:
  /// Throws std::invalid_argument for an invalid gas model or order > 7.
  NavierStokes2D(const CartesianMesh& mesh, const GasModel& gas);

  const CartesianMesh& mesh() const { return mesh_; }
  const GasModel& gas() const { return gas_; }

  FlowField make_field() const { return FlowField(mesh_.n_elements(), mesh_.points_per_element()); }
  FlowField uniform_field(const State& U) const;

  /// dU/dt of the unpenalized equations. Throws PositivityError when an
  /// interface state is inadmissible.
  void rhs(const FlowField& U, FlowField& dUdt);

  /// FR gradient stages only: conserved-variable gradients with LDG traces.
  void gradients(const FlowField& U, FlowField& Ux, FlowField& Uy);

  /// One TVD-RK3 or LSERK(5,4) step of the unpenalized equations.
  void rk_step(FlowField& U, double dt, TimeScheme scheme);

  /// Throws PositivityError naming the first point with rho <= 0 or p <= 0.
  void check_positivity(const FlowField& U) const;

  /// x-momentum, y-momentum normal fluxes (inviscid minus viscous) integrated
  /// over the boundary of the element block [i0, i1) x [j0, j1), outward
  /// normals, evaluated with the common interface fluxes of U.
  std::array<double, 2> boundary_momentum_flux(const FlowField& U, int i0, int i1, int j0, int j1);

 private:
  template <int Q>
  void rhs_impl(const FlowField& U, FlowField* dUdt, FlowField* Ux, FlowField* Uy);

  int x_face(int i, int j) const { return j * (mesh_.nx() + 1) + i; }
  int y_face(int i, int j) const { return j * mesh_.nx() + i; }
  int right_face(int i, int j) const {
    return (mesh_.periodic_x() && i + 1 == mesh_.nx()) ? x_face(0, j) : x_face(i + 1, j);
  }
  int top_face(int i, int j) const {
    return (mesh_.periodic_y() && j + 1 == mesh_.ny()) ? y_face(i, 0) : y_face(i, j + 1);
  }

  const CartesianMesh& mesh_;
  GasModel gas_;
  State freestream_;
  // Face data [face][var][point]
  std::vector<double> xm_, xp_, xhat_, xgx_, xgy_, xflux_;
  std::vector<double> ym_, yp_, yhat_, ygx_, ygy_, yflux_;
  FlowField fx_, fy_, gx_, gy_;
  FlowField stage_, k_;
};

/// Immersed body: mask over all solution points (flat index e * np + p),
/// penalization, SFD parameters and state.
struct ImmersedBody {
  mask::MaskField mask;
  std::vector<std::size_t> solid_points;
  mask::Penalization pen = mask::Penalization::disabled();
  sfd::SfdParams sfd = sfd::SfdParams::disabled();
  sfd::SfdState sfd_state;

  /// Sets solid_points from the mask and q_bar to u_s at every solid point.
  void initialise(const std::array<double, 2>& u_s);
};

/// Momentum added to the flow by the penalization half-steps and the SFD
/// update during one step, integrated with the quadrature weights.
struct StepImpulse {
  double fx = 0.0;
  double fy = 0.0;
};

/// Explicit penalization half-step U += (dt/2) S(U) at the solid points.
/// Returns the integrated momentum change.
StepImpulse penalization_half_step(const CartesianMesh& mesh, FlowField& U, double dt, const ImmersedBody& body);

/// Half penalization step, full RK step, half penalization step, then the SFD
/// propagator on the in-solid velocities. Positivity is checked after each
/// sub-stage.
StepImpulse strang_step(NavierStokes2D& solver, FlowField& U, double dt, ImmersedBody& body, TimeScheme scheme);

}  // namespace penalfr::ns
