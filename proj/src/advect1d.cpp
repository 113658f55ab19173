#include "penalfr/advect1d.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace penalfr::advect {

eigensolution::AdvectionSetup AdvectionRun::setup() const {
  eigensolution::AdvectionSetup s;
  s.N = N;
  s.P = P;
  s.c = c;
  s.lambda = lambda;
  s.slab_elements = slab_elements;
  return s;
}

namespace {

void validate(const AdvectionRun& r) {
  if (r.N < 2 || r.P < 0) throw std::invalid_argument("advect: need N >= 2 and P >= 0");
  if (r.slab_elements < 0 || r.slab_elements >= r.N / 2) {
    throw std::invalid_argument("advect: slab must span 0 <= Z < N/2 elements");
  }
  if (!(r.dt > 0.0) || !(r.t_final >= 0.0)) throw std::invalid_argument("advect: need dt > 0 and t_final >= 0");
  r.sfd.validate();
}

struct Solver {
  fr::ElementOperators ops;
  int N;
  int n;
  std::vector<std::uint8_t> solid;
  double inv_eta = 0.0;
  double u_s = 0.0;

  void rhs(const std::vector<double>& u, std::vector<double>& out) const {
    using Vec = Eigen::Map<const Eigen::VectorXd>;
    for (int e = 0; e < N; ++e) {
      const int em = (e + N - 1) % N;
      const int ep = (e + 1) % N;
      Eigen::Map<Eigen::VectorXd> o(out.data() + e * n, n);
      o.noalias() = ops.C * Vec(u.data() + e * n, n);
      o.noalias() += ops.L * Vec(u.data() + em * n, n);
      if (ops.lambda != 1.0 || ops.c < 0.0) o.noalias() += ops.R * Vec(u.data() + ep * n, n);
    }
    if (inv_eta > 0.0) {
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (solid[i]) out[i] -= inv_eta * (u[i] - u_s);
      }
    }
  }
};

}  // namespace

std::vector<double> initial_condition(const AdvectionRun& run, std::span<const double> x) {
  const double delta = run.delta();
  const double k = run.k_hat();
  std::vector<double> u(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (run.slab_elements > 0 && mask::slab(x[i], delta)) continue;
    double s = x[i] - delta;
    if (run.slab_elements > 0 && x[i] < 0.0) s = x[i] + 2.0 - delta;
    if (run.slab_elements == 0) s = x[i] + 1.0;
    u[i] = std::sin(k * s);
  }
  return u;
}

AdvectionResult run(const AdvectionRun& cfg) {
  validate(cfg);
  const auto setup = cfg.setup();
  Solver sol;
  sol.ops = setup.element_operators();
  sol.N = cfg.N;
  sol.n = cfg.P + 1;

  AdvectionResult res;
  res.x = setup.solution_points();
  res.solid.assign(res.x.size(), 0);
  if (cfg.slab_elements > 0) res.solid = mask::slab_mask(res.x, cfg.delta()).values;
  sol.solid = res.solid;
  if (cfg.pen.enabled()) {
    sol.inv_eta = cfg.pen.inverse_eta();
    sol.u_s = cfg.pen.u_s()[0];
  }
  std::vector<std::size_t> solid_pts;
  for (std::size_t i = 0; i < res.solid.size(); ++i) {
    if (res.solid[i]) solid_pts.push_back(i);
  }

  std::vector<double> u = initial_condition(cfg, res.x);
  const double u_target = cfg.pen.enabled() ? cfg.pen.u_s()[0] : 0.0;
  const std::array<double, 1> us{u_target};
  res.sfd_state.q_bar = sfd::init_filtered(solid_pts.size(), us);
  res.sfd_state.q = sfd::select_scalar(u, solid_pts);

  const std::size_t n = u.size();
  std::vector<double> k1(n), u1(n), u2(n);
  const long full_steps = static_cast<long>(std::floor(cfg.t_final / cfg.dt * (1.0 + 1e-12)));
  const double rest = cfg.t_final - full_steps * cfg.dt;
  const long total = full_steps + (rest > 1e-12 * cfg.dt ? 1 : 0);
  const auto full_prop = cfg.sfd.enabled ? sfd::build_propagator(cfg.sfd, cfg.dt) : sfd::SfdPropagator{};

  double t = 0.0;
  for (long step = 0; step < total; ++step) {
    const double dt = step < full_steps ? cfg.dt : rest;
    sol.rhs(u, k1);
    for (std::size_t i = 0; i < n; ++i) u1[i] = u[i] + dt * k1[i];
    sol.rhs(u1, k1);
    for (std::size_t i = 0; i < n; ++i) u2[i] = 0.75 * u[i] + 0.25 * (u1[i] + dt * k1[i]);
    sol.rhs(u2, k1);
    for (std::size_t i = 0; i < n; ++i) u[i] = (u[i] + 2.0 * (u2[i] + dt * k1[i])) / 3.0;

    if (cfg.sfd.enabled && !solid_pts.empty()) {
      const auto prop = step < full_steps ? full_prop : sfd::build_propagator(cfg.sfd, dt);
      const auto q = sfd::select_scalar(u, solid_pts);
      res.sfd_state = sfd::sfd_step(res.sfd_state, q, prop);
      sfd::scatter_scalar(res.sfd_state.q, u, solid_pts);
    }
    t += dt;
    for (double v : u) {
      if (!std::isfinite(v) || std::abs(v) > 1e100) {
        throw NumericalInstability(step, "advect: solution blew up at step " + std::to_string(step) +
                                             " (t = " + std::to_string(t) + ")");
      }
    }
    if (cfg.snapshot_every > 0 && (step + 1) % cfg.snapshot_every == 0) res.history.push_back({t, u});
  }
  if (!cfg.sfd.enabled) res.sfd_state.q = sfd::select_scalar(u, solid_pts);
  res.u = std::move(u);
  res.steps = total;
  res.t = t;
  return res;
}

namespace {

double rms_over(std::span<const double> x, std::span<const double> u, double lo, double hi) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= lo && x[i] <= hi) {
      sum += u[i] * u[i];
      ++count;
    }
  }
  return count ? std::sqrt(sum / static_cast<double>(count)) : 0.0;
}

}  // namespace

double flow_error(std::span<const double> x, std::span<const double> u, double delta) {
  return rms_over(x, u, delta, 1.0);
}

double solid_error(std::span<const double> x, std::span<const double> u, double delta) {
  return rms_over(x, u, 0.0, delta);
}

double step_spectral_radius(const AdvectionRun& cfg, double dt, double k) {
  eigensolution::AnalysisCase c;
  c.setup = cfg.setup();
  c.immersed = cfg.slab_elements > 0;
  c.penalization = cfg.pen;
  const auto op = eigensolution::assemble(c, k);
  const Eigen::MatrixXcd A = eigensolution::rk3_amplification(op.matrix, dt);
  if (!cfg.sfd.enabled || !c.immersed) {
    return eigensolution::decompose(A, false).values.cwiseAbs().maxCoeff();
  }
  const int nf = op.field_size();
  std::vector<int> solid;
  for (int i = 0; i < nf; ++i) {
    if (op.solid[i]) solid.push_back(i);
  }
  const int ns = static_cast<int>(solid.size());
  const auto p = sfd::build_propagator(cfg.sfd, dt);
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(nf + ns, nf + ns);
  T.topLeftCorner(nf, nf) = A;
  for (int j = 0; j < ns; ++j) {
    const int i = solid[j];
    T.row(nf + j).head(nf) = p.a21 * A.row(i);
    T(nf + j, nf + j) = p.a22;
    T.row(i).head(nf) = p.a11 * A.row(i);
    T(i, nf + j) = p.a12;
  }
  return eigensolution::decompose(T, false).values.cwiseAbs().maxCoeff();
}

double max_stable_dt(const AdvectionRun& cfg, double rel_tol) {
  validate(cfg);
  const auto setup = cfg.setup();
  const bool immersed = cfg.slab_elements > 0;
  const std::vector<double> ks{0.0, eigensolution::bloch_wavenumber(setup, 0.8, immersed),
                               eigensolution::bloch_wavenumber(setup, 1.7, immersed),
                               eigensolution::bloch_wavenumber(setup, 2.9, immersed)};
  auto stable = [&](double dt) {
    for (double k : ks) {
      if (step_spectral_radius(cfg, dt, k) > 1.0 + 1e-10) return false;
    }
    return true;
  };
  double lo = 1e-9;
  double hi = 1e-2 * cfg.h();
  while (stable(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e3) return hi;
  }
  if (!stable(lo)) throw std::runtime_error("max_stable_dt: no stable step found above 1e-9");
  while (hi / lo > 1.0 + rel_tol) {
    const double mid = std::sqrt(lo * hi);
    (stable(mid) ? lo : hi) = mid;
  }
  return lo;
}

AdvectionRun with_point(const AdvectionRun& base, const SweepPoint& p) {
  AdvectionRun r = base;
  r.pen = p.eta ? mask::Penalization::with_eta(*p.eta) : mask::Penalization::disabled();
  r.sfd = p.chi_f ? sfd::SfdParams::with(*p.chi_f, p.delta) : sfd::SfdParams::disabled();
  return r;
}

SweepRow evaluate_point(const AdvectionRun& base, const SweepPoint& p, double dt_safety) {
  SweepRow row;
  row.params = p;
  auto cfg = with_point(base, p);
  row.max_stable_dt = max_stable_dt(cfg);
  cfg.dt = std::min(base.dt, dt_safety * row.max_stable_dt);
  row.dt = cfg.dt;
  const AdvectionResult res = run(cfg);
  row.flow_error = flow_error(res.x, res.u, cfg.delta());
  row.solid_error = solid_error(res.x, res.u, cfg.delta());
  return row;
}

namespace {

double median_wall_time(const AdvectionRun& cfg, int repeats) {
  std::vector<double> times;
  for (int rep = 0; rep < std::max(repeats, 1); ++rep) {
    const auto t0 = std::chrono::steady_clock::now();
    (void)run(cfg);
    times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
  return times[times.size() / 2];
}

}  // namespace

std::vector<SweepRow> sweep(const AdvectionRun& base, std::span<const SweepPoint> points,
                            const SweepOptions& options) {
  std::vector<SweepRow> rows;
  for (const auto& p : points) {
    SweepRow row;
    row.params = p;
    try {
      row = evaluate_point(base, p, options.dt_safety);
      auto cfg = with_point(base, p);
      cfg.dt = row.dt;
      row.wall_time = median_wall_time(cfg, options.timing_repeats);
    } catch (const std::exception& e) {
      row.ok = false;
      row.message = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CostStudy matched_error_study(const AdvectionRun& base, double eta, const CostOptions& options) {
  if (!(eta > 0.0)) throw std::invalid_argument("matched_error_study: eta must be positive");
  CostStudy out;
  out.combined = evaluate_point(base, {eta, 1.0 / eta, options.delta}, options.dt_safety);
  out.target_error = out.combined.flow_error;
  const double target = out.target_error;

  // s is the penalty time scale: eta' or 1/chi_f'. The flow error grows with s.
  auto match = [&](auto&& point_of) {
    auto eval = [&](double s) { return evaluate_point(base, point_of(s), options.dt_safety); };
    double lo = eta, hi = eta;
    SweepRow r_lo = eval(lo), r_hi = r_lo;
    while (r_lo.flow_error > target) {
      hi = lo;
      r_hi = r_lo;
      lo /= 10.0;
      if (lo < eta * 1e-6) throw std::runtime_error("matched_error_study: no lower bracket for the target error");
      r_lo = eval(lo);
    }
    while (r_hi.flow_error < target) {
      lo = hi;
      r_lo = r_hi;
      hi *= 10.0;
      if (hi > eta * 1e6) throw std::runtime_error("matched_error_study: no upper bracket for the target error");
      r_hi = eval(hi);
    }
    SweepRow best = std::abs(r_lo.flow_error - target) < std::abs(r_hi.flow_error - target) ? r_lo : r_hi;
    while (std::abs(best.flow_error - target) > options.rel_tol * target && hi / lo > 1.0 + 1e-9) {
      const double mid = std::sqrt(lo * hi);
      const SweepRow r = eval(mid);
      (r.flow_error < target ? lo : hi) = mid;
      if (std::abs(r.flow_error - target) < std::abs(best.flow_error - target)) best = r;
    }
    return best;
  };
  out.penalization_only = match([](double s) { return SweepPoint{s, std::nullopt, 100.0}; });
  out.sfd_only = match([&](double s) { return SweepPoint{std::nullopt, 1.0 / s, options.delta}; });

  for (SweepRow* r : {&out.combined, &out.penalization_only, &out.sfd_only}) {
    auto cfg = with_point(base, r->params);
    cfg.dt = r->dt;
    r->wall_time = median_wall_time(cfg, options.timing_repeats);
  }
  return out;
}

}  // namespace penalfr::advect
