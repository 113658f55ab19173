#include "penalfr/io/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "penalfr/io/checkpoint.hpp"
#include "penalfr/io/outputs.hpp"

namespace penalfr::io {

namespace fs = std::filesystem;

std::string checkpoint_name(long long step) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "checkpoint_%08lld.bin", step);
  return buf;
}

namespace {

std::string field_name(long long step) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "field_%08lld.csv", step);
  return buf;
}

void say(const RunOptions& o, const std::string& msg) {
  if (o.log) *o.log << msg << std::endl;
}

std::string scheme_label(eigensolution::Scheme s) {
  switch (s) {
    case eigensolution::Scheme::penalization_only: return "penalization";
    case eigensolution::Scheme::sfd_only: return "sfd";
    case eigensolution::Scheme::combined: return "combined";
  }
  return "";
}

void run_eigen(const RunConfig& cfg, const fs::path& out, const RunOptions& o) {
  const auto& e = cfg.eigen;
  const auto ks = eigensolution::default_wavenumbers(e.k_samples, e.k_max);
  const auto c = e.analysis_case();
  eigensolution::ModeSpectrum s;
  if (cfg.mode == Mode::eigen_semi) {
    say(o, "eigen semi: " + std::to_string(ks.size()) + " wavenumbers");
    s = eigensolution::semi_discrete_sweep(c, ks);
  } else {
    say(o, "eigen full: " + std::to_string(ks.size()) + " wavenumbers at dt " + format_double(e.dt));
    s = eigensolution::fully_discrete_sweep(c, e.dt, ks);
  }
  write_csv(spectrum_table(s), out / "spectrum.csv");
  write_csv(physical_table(s), out / "physical.csv");

  if (cfg.mode == Mode::eigen_full && e.critical) {
    eigensolution::CriticalSearch cs;
    cs.setup = c.setup;
    cs.dt = e.dt;
    cs.scheme = e.critical->scheme;
    cs.coupling = e.critical->coupling;
    cs.sfd_delta = e.critical->delta;
    cs.lo_ratio = e.critical->lo_ratio;
    cs.hi_ratio = e.critical->hi_ratio;
    cs.tol_ratio = e.critical->tol_ratio;
    const auto r = eigensolution::critical_parameter_search(cs);
    CsvTable t;
    t.header = {"dt", "scheme", "eta_critical", "ratio"};
    t.rows.push_back({e.dt, scheme_label(cs.scheme), r.eta_critical, r.ratio});
    write_csv(t, out / "critical.csv");
    say(o, "critical eta/dt = " + format_double(r.ratio));
  }
}

void run_advect(const RunConfig& cfg, const fs::path& out, const RunOptions& o) {
  const auto& a = cfg.advect;
  std::optional<AdvectSweepConfig> sw = a.sweep;
  if (o.sweep_file) sw = load_sweep(*o.sweep_file, a);
  if (sw) {
    const auto points = sw->points();
    say(o, "advect sweep: " + std::to_string(points.size()) + " points");
    advect::SweepOptions so;
    so.dt_safety = sw->dt_safety;
    so.timing_repeats = sw->timing_repeats;
    const auto rows = advect::sweep(a.run(), points, so);
    write_csv(sweep_table(rows), out / "sweep.csv");
    return;
  }
  const auto run = a.run();
  advect::AdvectionResult r;
  try {
    r = advect::run(run);
  } catch (const advect::NumericalInstability& e) {
    throw NumericalFailure(e.what());
  }
  write_csv(solution_table(r), out / "solution.csv");
  CsvTable sum;
  sum.header = {"t", "steps", "flow_error", "solid_error"};
  sum.rows.push_back({r.t, static_cast<long long>(r.steps), advect::flow_error(r.x, r.u, run.delta()),
                      advect::solid_error(r.x, r.u, run.delta())});
  write_csv(sum, out / "summary.csv");
  if (!r.history.empty()) {
    CsvTable snaps;
    snaps.header = {"t", "x", "u"};
    for (const auto& s : r.history) {
      for (std::size_t i = 0; i < s.u.size(); ++i) snaps.rows.push_back({s.t, r.x[i], s.u[i]});
    }
    write_csv(snaps, out / "snapshots.csv");
  }
  say(o, "advect: t = " + format_double(r.t) + ", flow error " + format_double(std::get<double>(sum.rows[0][2])));
}

/// Data rows of an earlier CSV whose step column is <= `step`.
std::size_t rows_through(const fs::path& path, long long step) {
  if (!fs::exists(path)) return 0;
  const CsvText t = read_csv(path);
  std::size_t n = 0;
  for (const auto& row : t.rows) {
    if (row.empty() || std::stoll(row[0]) > step) break;
    ++n;
  }
  return n;
}

void write_ns_summary(const ns::NsSimulation& sim, const fs::path& out) {
  const CsvText f = read_csv(out / "forces.csv");
  std::vector<double> cl, cd;
  for (const auto& row : f.rows) {
    cl.push_back(std::stod(row[2]));
    cd.push_back(std::stod(row[3]));
  }
  CsvTable t;
  t.header = {"samples", "cd_mean", "cl_mean", "cl_amplitude", "strouhal"};
  Cell st = std::string();
  const double sample_dt = sim.config().dt * sim.config().record_every;
  if (cl.size() >= 32) {
    try {
      st = ns::strouhal(cl, sample_dt, sim.config().l_ref, 1.0);
    } catch (const std::exception&) {
      // no dominant frequency: steady flow
    }
  }
  if (cl.empty()) {
    t.rows.push_back({0LL, std::string(), std::string(), std::string(), st});
  } else {
    const auto sl = ns::series_stats(cl);
    const auto sd = ns::series_stats(cd);
    t.rows.push_back({static_cast<long long>(cl.size()), sd.mean, sl.mean, sl.amplitude, st});
  }
  write_csv(t, out / "summary.csv");
}

void run_ns(const RunConfig& cfg, const fs::path& out, const RunOptions& o) {
  const auto& n = cfg.ns2d;
  ns::NsCase c;
  try {
    c = n.ns_case();
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  ns::NsSimulation sim(c);
  say(o, "ns2d: mesh " + std::to_string(sim.mesh().nx()) + " x " + std::to_string(sim.mesh().ny()) + ", " +
             std::to_string(sim.mesh().n_points()) + " points, " + std::to_string(sim.body().solid_points.size()) +
             " in the solid");

  long long resumed_at = -1;
  if (o.resume) {
    Checkpoint cp = load_checkpoint(*o.resume, sim.mesh().hash());
    try {
      sim.restore(std::move(cp.field), std::move(cp.sfd_state), cp.step, cp.t);
    } catch (const std::invalid_argument& e) {
      throw CheckpointError(std::string("checkpoint: ") + e.what());
    }
    resumed_at = cp.step;
    say(o, "resumed at step " + std::to_string(cp.step) + ", t = " + format_double(cp.t));
  }
  const auto keep = [&](const char* name) {
    return resumed_at >= 0 ? rows_through(out / name, resumed_at) : std::size_t{0};
  };
  CsvStream probes(out / "probes.csv", probe_header(sim.probes().size()), keep("probes.csv"));
  CsvStream forces(out / "forces.csv", force_header(), keep("forces.csv"));

  auto save = [&]() {
    Checkpoint cp;
    cp.mesh_hash = sim.mesh().hash();
    cp.step = sim.step_index();
    cp.t = sim.time();
    cp.field = sim.state();
    cp.sfd_state = sim.body().sfd_state;
    save_checkpoint(out / checkpoint_name(cp.step), cp);
  };

  const auto t0 = std::chrono::steady_clock::now();
  const long long total = static_cast<long long>(std::ceil((c.t_final - sim.time()) / c.dt - 1e-9));
  const long long report = std::max<long long>(total / 100, 1);
  long long done = 0;
  try {
    sim.run([&](const ns::NsSimulation& s) {
      const long long k = s.step_index();
      if (k % c.record_every == 0) {
        std::vector<Cell> row{k, s.time()};
        for (const auto& p : s.probes()) {
          const auto uv = ns::probe_sample(s.state(), p);
          row.push_back(uv[0]);
          row.push_back(uv[1]);
        }
        probes.row(row);
        forces.row({k, s.time(), s.last_forces().cl, s.last_forces().cd});
      }
      if (n.checkpoint_every > 0 && k % n.checkpoint_every == 0) {
        probes.flush();
        forces.flush();
        save();
      }
      if (n.snapshot_every > 0 && k % n.snapshot_every == 0) {
        write_csv(field_table(s.mesh(), s.state()), out / field_name(k));
      }
      if (++done % report == 0) {
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char buf[160];
        std::snprintf(buf, sizeof(buf), "step %lld  t %.4f  cl %+.5f  cd %.5f  wall %.1fs", k, s.time(),
                      s.last_forces().cl, s.last_forces().cd, wall);
        say(o, buf);
      }
      return true;
    });
  } catch (const ns::PositivityError& e) {
    probes.flush();
    forces.flush();
    throw NumericalFailure(e.what());
  }
  probes.flush();
  forces.flush();
  save();
  write_csv(field_table(sim.mesh(), sim.state()), out / "field_final.csv");
  const auto surf = ns::surface_pressure(sim.mesh(), sim.state(), sim.body().mask, c.gas);
  write_csv(surface_table(surf), out / "surface_cp.csv");
  write_ns_summary(sim, out);
  say(o, "ns2d: done at t = " + format_double(sim.time()));
}

}  // namespace

void run_config(const RunConfig& cfg, const RunOptions& options) {
  const fs::path out = options.out.empty() ? fs::path(cfg.output_dir) : options.out;
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + out.string() + "': " + ec.message());
  {
    std::ofstream f(out / "config.json", std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write '" + (out / "config.json").string() + "'");
    f << emit_config(cfg);
  }
  switch (cfg.mode) {
    case Mode::eigen_semi:
    case Mode::eigen_full: run_eigen(cfg, out, options); break;
    case Mode::advect: run_advect(cfg, out, options); break;
    case Mode::ns2d: run_ns(cfg, out, options); break;
  }
}

}  // namespace penalfr::io
