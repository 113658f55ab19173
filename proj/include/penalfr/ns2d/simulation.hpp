// Time-marching driver for an immersed body in a uniform stream: owns the
// mesh, solver, mask and state, and records forces and probe velocities.
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "penalfr/ns2d/diagnostics.hpp"

namespace penalfr::ns {

struct NsCase {
  GasModel gas;
  MeshSpec mesh;
  int order = 2;
  BodyShape body;
  double l_ref = 1.0;
  mask::Penalization pen = mask::Penalization::disabled();
  sfd::SfdParams sfd = sfd::SfdParams::disabled();
  TimeScheme scheme = TimeScheme::lserk;
  double dt = 4e-4;
  double t_final = 1.0;
  std::vector<std::array<double, 2>> probes;
  ForceMethod force_method = ForceMethod::penalization;
  int record_every = 1;  // history cadence in steps

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct NsHistory {
  std::vector<double> t;
  std::vector<double> cl;
  std::vector<double> cd;
  std::vector<std::vector<std::array<double, 2>>> probes;  // [probe][sample]
};

class NsSimulation {
 public:
  /// Builds the mesh and mask and starts from the uniform free stream.
  explicit NsSimulation(const NsCase& c);

  const NsCase& config() const { return case_; }
  const CartesianMesh& mesh() const { return mesh_; }
  NavierStokes2D& solver() { return solver_; }
  const FlowField& state() const { return U_; }
  const ImmersedBody& body() const { return body_; }
  const std::vector<Probe>& probes() const { return probes_; }
  const NsHistory& history() const { return history_; }
  double time() const { return t_; }
  long long step_index() const { return step_; }

  /// One Strang step; records forces/probes every `record_every` steps.
  /// Throws PositivityError.
  void step();

  /// Steps until t_final (the last step may be shortened). `on_step` runs after
  /// every step; returning false stops early.
  void run(const std::function<bool(const NsSimulation&)>& on_step = {});

  /// Replace state, SFD state, step counter and time (checkpoint restore).
  /// Throws std::invalid_argument on a size mismatch.
  void restore(FlowField U, sfd::SfdState sfd_state, long long step, double t);

  /// Forces from the most recent step.
  const ForceCoefficients& last_forces() const { return last_; }

 private:
  void step_with(double dt);

  NsCase case_;
  CartesianMesh mesh_;
  NavierStokes2D solver_;
  ImmersedBody body_;
  FlowField U_;
  std::vector<Probe> probes_;
  std::optional<ControlVolumeForce> cv_;
  NsHistory history_;
  ForceCoefficients last_;
  double t_ = 0.0;
  long long step_ = 0;
};

}  // namespace penalfr::ns
