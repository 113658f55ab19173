// Post-processing for the 2D solver: body masks on the mesh, aerodynamic
// forces, point probes, surface pressure and shedding frequency.
#pragma once

#include <array>
#include <span>
#include <vector>

#include "penalfr/field.hpp"
#include "penalfr/masking.hpp"
#include "penalfr/ns2d/gas.hpp"
#include "penalfr/ns2d/mesh.hpp"
#include "penalfr/ns2d/solver.hpp"

namespace penalfr::ns {

struct BodyShape {
  mask::Geometry geometry = mask::Geometry::circle;
  mask::Point2 center{0.0, 0.0};  // circle only
  double size = 1.0;              // diameter, or chord (NACA0012 uses unit chord)
};

/// Mask over every solution point (flat index e * np + p). Slabs are not a 2D
/// geometry and throw std::invalid_argument.
mask::MaskField body_mask(const CartesianMesh& mesh, const BodyShape& body);

struct ForceCoefficients {
  double cl = 0.0;
  double cd = 0.0;
};

enum class ForceMethod { penalization, control_volume };

/// Lift/drag coefficients of a body force (fx, fy) acting on the body, for
/// free-stream incidence alpha and reference length l_ref (rho = |V| = 1).
ForceCoefficients to_coefficients(double fx, double fy, double l_ref, double alpha_deg);

/// Instantaneous force from the penalization source: minus the quadrature
/// integral of the momentum source over the solid points. Throws
/// std::invalid_argument for an empty mask.
ForceCoefficients compute_forces(const CartesianMesh& mesh, const FlowField& U, const ImmersedBody& body,
                                 double l_ref, double alpha_deg);

/// Force over one step from the momentum the penalization half-steps and the
/// SFD update removed from the flow: F_body = -impulse / dt.
ForceCoefficients impulse_forces(const StepImpulse& impulse, double dt, double l_ref, double alpha_deg);

/// Momentum balance over a fixed block of elements enclosing the body:
/// F_body = -(dM/dt + boundary outflux), with the outflux averaged over the
/// two ends of the step.
class ControlVolumeForce {
 public:
  /// Throws std::invalid_argument for an empty or out-of-range block.
  ControlVolumeForce(const CartesianMesh& mesh, int i0, int i1, int j0, int j1);
  /// Block enclosing [x0, x1] x [y0, y1] plus `pad` elements on each side,
  /// clipped to the mesh.
  static ControlVolumeForce around(const CartesianMesh& mesh, double x0, double x1, double y0, double y1, int pad);

  std::array<double, 2> momentum(const FlowField& U) const;
  /// Call before a step with the state at the start of the step.
  void begin(NavierStokes2D& solver, const FlowField& U);
  /// Call after the step; returns the body force averaged over it.
  std::array<double, 2> end(NavierStokes2D& solver, const FlowField& U, double dt);

 private:
  const CartesianMesh* mesh_;
  int i0_, i1_, j0_, j1_;
  std::array<double, 2> m0_{0.0, 0.0};
  std::array<double, 2> flux0_{0.0, 0.0};
};

struct Probe {
  double x = 0.0;  // requested
  double y = 0.0;
  int element = -1;
  int point = -1;
  double snapped_x = 0.0;  // nearest solution point
  double snapped_y = 0.0;
  std::size_t flat() const;
  int points_per_element = 0;
};

/// Nearest solution point to (x, y). Throws std::out_of_range outside the
/// mesh.
Probe locate_probe(const CartesianMesh& mesh, double x, double y);

/// (u, v) at the probe point.
std::array<double, 2> probe_sample(const FlowField& U, const Probe& probe);

/// One surface-pressure sample at the first fluid point next to the body.
struct SurfacePoint {
  double x = 0.0;
  double y = 0.0;
  bool upper = true;
  double cp = 0.0;
};

/// For each column of solution points (same x) crossing the body: the first
/// fluid point above the topmost solid point and below the bottommost one,
/// ordered by x. Cp = (p - p_inf) / (rho V^2 / 2).
std::vector<SurfacePoint> surface_pressure(const CartesianMesh& mesh, const FlowField& U,
                                           const mask::MaskField& mask, const GasModel& gas);

/// Statistics of a time series after discarding the leading `trim` fraction.
struct SeriesStats {
  double mean = 0.0;
  double amplitude = 0.0;  // half the peak-to-peak range
  double rms = 0.0;        // about the mean
};
SeriesStats series_stats(std::span<const double> series, double trim = 0.5);

/// fD/V from the dominant spectral peak of an evenly sampled signal after
/// discarding the leading `trim` fraction. Hann window, zero padding and
/// parabolic interpolation of the log-magnitude peak. Throws
/// std::runtime_error when no peak stands 10x above the median spectral
/// level, or std::invalid_argument for fewer than 16 retained samples.
double strouhal(std::span<const double> series, double dt, double d_ref, double v_ref, double trim = 0.5);

}  // namespace penalfr::ns
