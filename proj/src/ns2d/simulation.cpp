#include "penalfr/ns2d/simulation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace penalfr::ns {

void NsCase::validate() const {
  gas.validate();
  if (order < 0 || order > 7) throw std::invalid_argument("ns2d.order: must be in [0, 7]");
  if (!(dt > 0.0)) throw std::invalid_argument("ns2d.dt: must be positive");
  if (!(t_final >= 0.0)) throw std::invalid_argument("ns2d.t_final: must be non-negative");
  if (!(l_ref > 0.0)) throw std::invalid_argument("ns2d.l_ref: must be positive");
  if (record_every < 1) throw std::invalid_argument("ns2d.record_every: must be >= 1");
  if (!(body.size > 0.0)) throw std::invalid_argument("ns2d.body.size: must be positive");
  sfd.validate();
}

namespace {

const NsCase& checked(const NsCase& c) {
  c.validate();
  return c;
}

}  // namespace

NsSimulation::NsSimulation(const NsCase& c)
    : case_(checked(c)), mesh_(build_mesh(c.mesh, c.order)), solver_(mesh_, c.gas) {
  body_.mask = body_mask(mesh_, c.body);
  body_.pen = c.pen;
  body_.sfd = c.sfd;
  body_.initialise(c.pen.enabled() ? c.pen.u_s() : std::array<double, 2>{0.0, 0.0});
  U_ = solver_.uniform_field(c.gas.free_stream());
  for (const auto& p : c.probes) probes_.push_back(locate_probe(mesh_, p[0], p[1]));
  history_.probes.resize(probes_.size());
  if (c.force_method == ForceMethod::control_volume) {
    const double h = 0.5 * c.body.size;
    const double cx = c.body.center.x, cy = c.body.center.y;
    cv_ = ControlVolumeForce::around(mesh_, cx - h, cx + h, cy - h, cy + h, 2);
  }
}

void NsSimulation::step() { step_with(case_.dt); }

void NsSimulation::step_with(double dt) {
  if (cv_) cv_->begin(solver_, U_);
  const StepImpulse imp = strang_step(solver_, U_, dt, body_, case_.scheme);
  if (cv_) {
    const auto f = cv_->end(solver_, U_, dt);
    last_ = to_coefficients(f[0], f[1], case_.l_ref, case_.gas.alpha_deg);
  } else {
    last_ = impulse_forces(imp, dt, case_.l_ref, case_.gas.alpha_deg);
  }
  t_ += dt;
  ++step_;
  if (step_ % case_.record_every == 0) {
    history_.t.push_back(t_);
    history_.cl.push_back(last_.cl);
    history_.cd.push_back(last_.cd);
    for (std::size_t k = 0; k < probes_.size(); ++k) history_.probes[k].push_back(probe_sample(U_, probes_[k]));
  }
}

void NsSimulation::run(const std::function<bool(const NsSimulation&)>& on_step) {
  const double eps = 1e-9 * case_.dt;
  while (t_ < case_.t_final - eps) {
    step_with(std::min(case_.dt, case_.t_final - t_));
    if (on_step && !on_step(*this)) break;
  }
}

void NsSimulation::restore(FlowField U, sfd::SfdState sfd_state, long long step, double t) {
  if (U.n_elements() != U_.n_elements() || U.points_per_element() != U_.points_per_element()) {
    throw std::invalid_argument("restore: field does not match the mesh");
  }
  if (sfd_state.q_bar.size() != body_.sfd_state.q_bar.size() || sfd_state.q.size() != body_.sfd_state.q.size()) {
    throw std::invalid_argument("restore: SFD state does not match the mask");
  }
  U_ = std::move(U);
  body_.sfd_state = std::move(sfd_state);
  step_ = step;
  t_ = t;
}

}  // namespace penalfr::ns
