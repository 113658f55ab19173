// Time-domain simulation of the penalized periodic advection problem on
// x in [-1, 1] with a slab solid starting at x = 0, optional encapsulated SFD,
// and the flow / solid error norms.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "penalfr/eigensolution.hpp"
#include "penalfr/masking.hpp"
#include "penalfr/sfd.hpp"

namespace penalfr::advect {

struct AdvectionRun {
  int N = 40;
  int P = 3;
  double c = 1.0;
  double lambda = 1.0;
  int slab_elements = 1;  // Z; zero disables the solid entirely
  double k_nondim = 0.3223;  // k_hat h / (P + 1)
  double dt = 1e-5;
  double t_final = 1.1;
  mask::Penalization pen = mask::Penalization::disabled();
  sfd::SfdParams sfd = sfd::SfdParams::disabled();
  int snapshot_every = 0;  // steps between stored snapshots, 0 = none

  double h() const { return 2.0 / N; }
  double delta() const { return slab_elements * h(); }
  double k_hat() const { return k_nondim * (P + 1) / h(); }
  eigensolution::AdvectionSetup setup() const;
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> u;
};

struct AdvectionResult {
  std::vector<double> x;
  std::vector<double> u;
  std::vector<std::uint8_t> solid;
  sfd::SfdState sfd_state;
  long steps = 0;
  double t = 0.0;
  std::vector<Snapshot> history;
};

class NumericalInstability : public std::runtime_error {
 public:
  NumericalInstability(long step, const std::string& what) : std::runtime_error(what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

/// Initial field: sin(k_hat s) in the fluid, s the distance downstream of the
/// slab end (periodically wrapped), zero inside the slab.
std::vector<double> initial_condition(const AdvectionRun& run, std::span<const double> x);

/// SSP-RK3 with the penalization source inside the stages, then the exact SFD
/// propagator on the in-slab values once per step. The final step is shortened
/// to land on t_final. Throws NumericalInstability on NaN / overflow and
/// std::invalid_argument on an invalid configuration.
AdvectionResult run(const AdvectionRun& run);

/// RMS of u over points with x in [delta, 1].
double flow_error(std::span<const double> x, std::span<const double> u, double delta);
/// RMS of u over points with x in [0, delta].
double solid_error(std::span<const double> x, std::span<const double> u, double delta);

/// Largest dt for which the linear one-step map (RK3 on the penalized operator
/// followed by the SFD propagator) has spectral radius <= 1, by bisection in
/// log(dt) to relative tolerance rel_tol.
double max_stable_dt(const AdvectionRun& run, double rel_tol = 1e-3);

/// Spectral radius of the one-step map at a Bloch wavenumber k.
double step_spectral_radius(const AdvectionRun& run, double dt, double k);

struct SweepPoint {
  std::optional<double> eta;    // nullopt: penalization off
  std::optional<double> chi_f;  // nullopt: SFD off
  double delta = 100.0;
};

struct SweepRow {
  SweepPoint params;
  double dt = 0.0;
  double flow_error = 0.0;
  double solid_error = 0.0;
  double max_stable_dt = 0.0;
  double wall_time = 0.0;  // median of the timed repetitions, seconds
  bool ok = true;
  std::string message;
};

struct SweepOptions {
  double dt_safety = 0.5;  // run dt = min(base dt, dt_safety * max_stable_dt)
  int timing_repeats = 3;
};

/// One run per point; failures are recorded per row and the sweep continues.
std::vector<SweepRow> sweep(const AdvectionRun& base, std::span<const SweepPoint> points,
                            const SweepOptions& options = {});

AdvectionRun with_point(const AdvectionRun& base, const SweepPoint& p);

/// Flow error of one point run at dt = min(base dt, dt_safety * max stable
/// dt). Fills everything except wall_time.
SweepRow evaluate_point(const AdvectionRun& base, const SweepPoint& p, double dt_safety);

/// Matched-error cost comparison. The combined scheme (eta, chi_f = 1/eta,
/// delta) sets the target flow error; penalization-only eta' and SFD-only
/// chi_f' are then tuned by bisection in log space until their flow errors
/// match it to `rel_tol`. Rows come back as combined, penalization, sfd, with
/// wall times from `timing_repeats` runs.
struct CostOptions {
  double delta = 100.0;
  double dt_safety = 0.5;
  double rel_tol = 2e-3;
  int timing_repeats = 3;
};
struct CostStudy {
  double target_error = 0.0;
  SweepRow combined;
  SweepRow penalization_only;
  SweepRow sfd_only;
};
CostStudy matched_error_study(const AdvectionRun& base, double eta, const CostOptions& options = {});

}  // namespace penalfr::advect
