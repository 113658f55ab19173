#include "penalfr/io/repro.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "penalfr/io/csv.hpp"
#include "penalfr/io/runner.hpp"

namespace penalfr::io {

namespace fs = std::filesystem;

const std::vector<ReproTarget>& repro_targets() {
  static const std::vector<ReproTarget> t{
      {"fig3", "advection snapshots at t = 1.1, four penalization/SFD cases", "seconds"},
      {"fig4", "advection flow and solid errors over chi_f and delta for eta = inf, 1e-3, 1e-5", "~10 min"},
      {"fig5", "semi-discrete physical mode, eta = 1e-3 with and without SFD (delta 0.01 .. 10)", "seconds"},
      {"fig6", "fully-discrete combined scheme around the critical eta, delta = 1e-3, dt = 1e-3", "seconds"},
      {"fig7", "solid-mode dissipation and critical eta/dt for dt = 1e-3, 1e-4, 1e-5", "~1 min"},
      {"fig8", "matched-error max stable dt and wall time, combined vs single methods", "~10 min"},
      {"fig10", "NACA0012 coarse mesh, flow fields for three parameter sets", "~4 h"},
      {"fig11", "NACA0012 coarse mesh probes, eta = 1e-2 and 5e-3 with and without SFD", "~5 h"},
      {"fig12", "NACA0012 coarse mesh probes, SFD filter width 100 vs 2", "~5 h"},
      {"fig13", "NACA0012 fine mesh probes, forces and Cp (also fig14, fig15)", "days"},
      {"fig14", "alias of fig13", "days"},
      {"fig15", "alias of fig13", "days"},
      {"fig17", "cylinder Re = 100 probes and forces, four cases (also fig18)", "~4 days"},
      {"fig18", "alias of fig17", "~4 days"},
      {"fig19", "cylinder at P = 1, 3, 4, penalty vs combined (also fig20)", "weeks"},
      {"fig20", "alias of fig19", "weeks"},
      {"table1", "cylinder mean Cd, Cl amplitude and Strouhal number for P = 1 .. 4", "weeks"},
      {"cylinder-smoke", "cylinder on the reduced [-10, 20] x [-10, 10] domain", "~20 h"},
  };
  return t;
}

namespace {

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

RunConfig advect_base() {
  RunConfig c;
  c.mode = Mode::advect;
  c.advect.dt = 1e-5;
  c.advect.t_final = 1.1;
  return c;
}

RunConfig advect_case(std::optional<double> eta, std::optional<SfdConfig> sfd) {
  RunConfig c = advect_base();
  c.advect.eta = eta;
  c.advect.sfd = sfd;
  return c;
}

RunConfig eigen_case(Mode mode, std::optional<double> eta, std::optional<SfdConfig> sfd) {
  RunConfig c;
  c.mode = mode;
  c.eigen.eta = eta;
  c.eigen.sfd = sfd;
  return c;
}

RunConfig naca(double h0, int nx, int ny, double dt, double t_final) {
  RunConfig c;
  c.mode = Mode::ns2d;
  auto& n = c.ns2d;
  n.Re = 5000.0;
  n.mach = 0.5;
  n.x = {-0.51, 0.51, -20.0, 40.0, h0};
  n.y = {-0.07, 0.07, -20.0, 20.0, h0};
  n.target_nx = nx;
  n.target_ny = ny;
  n.geometry = "naca0012";
  n.dt = dt;
  n.t_final = t_final;
  n.probes = {{0.0225, 0.015}, {0.555, 0.015}};
  n.checkpoint_every = 20000;
  return c;
}

RunConfig naca_coarse(std::optional<double> eta, std::optional<SfdConfig> sfd) {
  RunConfig c = naca(0.01, 174, 68, 5e-4, 30.0);
  c.ns2d.eta = eta;
  c.ns2d.sfd = sfd;
  return c;
}

RunConfig naca_fine(std::optional<double> eta, std::optional<SfdConfig> sfd) {
  RunConfig c = naca(0.003, 453, 124, 7.5e-5, 20.0);
  c.ns2d.eta = eta;
  c.ns2d.sfd = sfd;
  c.ns2d.record_every = 5;
  return c;
}

RunConfig cylinder(int order, double dt, std::optional<double> eta, std::optional<SfdConfig> sfd) {
  RunConfig c;
  c.mode = Mode::ns2d;
  auto& n = c.ns2d;
  n.order = order;
  n.dt = dt;
  n.eta = eta;
  n.sfd = sfd;
  n.t_final = 200.0;
  n.record_every = 5;
  n.checkpoint_every = 50000;
  return c;
}

using Cases = std::vector<std::pair<std::string, RunConfig>>;

Cases cylinder_orders(bool with_penalty) {
  Cases out;
  const struct {
    int P;
    double dt, eta;
  } rows[] = {{1, 6e-4, 6e-4}, {2, 4e-4, 5e-4}, {3, 1.5e-4, 1.5e-4}, {4, 5e-5, 5e-5}};
  for (const auto& r : rows) {
    if (with_penalty && r.P == 2) continue;
    const std::string p = "P" + std::to_string(r.P);
    if (with_penalty) out.emplace_back(p + "_penalty", cylinder(r.P, r.dt, r.eta, std::nullopt));
    out.emplace_back(p + "_combined", cylinder(r.P, r.dt, r.eta, SfdConfig{1.0 / r.eta, 100.0}));
  }
  return out;
}

std::string canonical(const std::string& id) {
  if (id == "fig14" || id == "fig15") return "fig13";
  if (id == "fig18") return "fig17";
  if (id == "fig20") return "fig19";
  return id;
}

void fig7(const fs::path& out, std::ostream* log) {
  using eigensolution::Coupling;
  using eigensolution::Scheme;
  CsvTable crit, diss;
  crit.header = {"dt", "scheme", "eta_critical", "ratio"};
  diss.header = {"dt", "scheme", "eta_over_dt", "max_solid_dissipation"};
  const std::pair<Scheme, const char*> schemes[] = {
      {Scheme::penalization_only, "penalization"}, {Scheme::sfd_only, "sfd"}, {Scheme::combined, "combined"}};
  for (double dt : {1e-3, 1e-4, 1e-5}) {
    for (const auto& [scheme, name] : schemes) {
      eigensolution::CriticalSearch s;
      s.dt = dt;
      s.scheme = scheme;
      s.coupling = Coupling::tied;
      s.sfd_delta = 100.0;
      const auto r = eigensolution::critical_parameter_search(s);
      crit.rows.push_back({dt, std::string(name), r.eta_critical, r.ratio});
      if (log) *log << "dt " << dt << " " << name << ": eta/dt = " << r.ratio << std::endl;
      for (int i = 0; i <= 28; ++i) {
        const double ratio = 0.3 + 0.025 * i;
        diss.rows.push_back({dt, std::string(name), ratio, eigensolution::max_solid_dissipation(s, ratio * dt)});
      }
    }
  }
  write_csv(crit, out / "critical.csv");
  write_csv(diss, out / "dissipation.csv");
}

void fig8(const fs::path& out, std::ostream* log) {
  CsvTable t;
  t.header = {"eta_target", "method", "eta", "chi_f", "flow_error", "max_stable_dt", "dt", "wall_time"};
  advect::AdvectionRun base;
  base.dt = 1e-5;
  for (double eta : {1e-3, 1e-4}) {
    const auto s = advect::matched_error_study(base, eta);
    auto add = [&](const char* m, const advect::SweepRow& r) {
      t.rows.push_back({eta, std::string(m), r.params.eta ? Cell(*r.params.eta) : Cell(std::string()),
                        r.params.chi_f ? Cell(*r.params.chi_f) : Cell(std::string()), r.flow_error, r.max_stable_dt,
                        r.dt, r.wall_time});
    };
    add("combined", s.combined);
    add("penalization", s.penalization_only);
    add("sfd", s.sfd_only);
    if (log) *log << "eta " << eta << ": target error " << s.target_error << std::endl;
  }
  write_csv(t, out / "cost.csv");
}

void table1(const fs::path& out) {
  CsvTable t;
  t.header = {"P", "cd_mean", "cl_amplitude", "strouhal"};
  for (int P = 1; P <= 4; ++P) {
    const fs::path s = out / ("P" + std::to_string(P) + "_combined") / "summary.csv";
    const CsvText st = read_csv(s);
    if (st.rows.empty()) continue;
    const auto& r = st.rows.front();
    t.rows.push_back({static_cast<long long>(P), r[1], r[3], r[4]});
  }
  write_csv(t, out / "table1.csv");
}

}  // namespace

std::vector<std::pair<std::string, RunConfig>> repro_cases(const std::string& requested) {
  const std::string id = canonical(requested);
  Cases c;
  if (id == "fig3") {
    c.emplace_back("case1_eta1e-3", advect_case(1e-3, std::nullopt));
    c.emplace_back("case2_eta1e-4", advect_case(1e-4, std::nullopt));
    c.emplace_back("case3_eta1e-3_chi1e5_delta0.01", advect_case(1e-3, SfdConfig{1e5, 0.01}));
    c.emplace_back("case4_eta1e-3_chi1e5_delta1", advect_case(1e-3, SfdConfig{1e5, 1.0}));
    for (auto& [name, cfg] : c) cfg.advect.snapshot_every = 10000;
  } else if (id == "fig4") {
    const std::optional<double> etas[] = {std::nullopt, 1e-3, 1e-5};
    for (const auto& eta : etas) {
      RunConfig r = advect_base();
      AdvectSweepConfig s;
      s.eta = {eta};
      s.chi_f = {1e2, 1e3, 1e4, 1e5};
      s.delta.clear();
      for (int e = -5; e <= 3; ++e) s.delta.push_back(std::pow(10.0, e));
      s.timing_repeats = 1;
      r.advect.sweep = s;
      c.emplace_back(eta ? "eta" + tag(*eta) : "sfd_only", r);
    }
    RunConfig ref = advect_base();
    AdvectSweepConfig s;
    s.eta = {1e-2, 1e-3, 1e-4, 1e-5};
    s.chi_f = {std::nullopt};
    s.timing_repeats = 1;
    ref.advect.sweep = s;
    c.emplace_back("penalization_only", ref);
  } else if (id == "fig5") {
    c.emplace_back("periodic", eigen_case(Mode::eigen_semi, std::nullopt, std::nullopt));
    c.back().second.eigen.immersed = false;
    c.emplace_back("eta1e-3", eigen_case(Mode::eigen_semi, 1e-3, std::nullopt));
    for (double d : {0.01, 0.1, 1.0, 10.0}) {
      c.emplace_back("eta1e-3_chi1e3_delta" + tag(d), eigen_case(Mode::eigen_semi, 1e-3, SfdConfig{1e3, d}));
    }
  } else if (id == "fig6") {
    for (double eta : {6e-4, 7e-4, 8e-4, 1e-3}) {
      RunConfig r = eigen_case(Mode::eigen_full, eta, SfdConfig{1.0 / eta, 1e-3});
      r.eigen.dt = 1e-3;
      c.emplace_back("eta" + tag(eta), r);
    }
  } else if (id == "fig10") {
    c.emplace_back("eta1e-2", naca_coarse(1e-2, std::nullopt));
    c.emplace_back("eta5e-3", naca_coarse(5e-3, std::nullopt));
    c.emplace_back("eta1e-2_chi5e3_delta10", naca_coarse(1e-2, SfdConfig{5e3, 10.0}));
  } else if (id == "fig11") {
    c.emplace_back("case1_eta1e-2", naca_coarse(1e-2, std::nullopt));
    c.emplace_back("case2_eta1e-2_chi1e2", naca_coarse(1e-2, SfdConfig{1e2, 100.0}));
    c.emplace_back("case3_eta5e-3", naca_coarse(5e-3, std::nullopt));
    c.emplace_back("case4_eta5e-3_chi2e3", naca_coarse(5e-3, SfdConfig{2e3, 100.0}));
  } else if (id == "fig12") {
    c.emplace_back("case1_eta1e-2", naca_coarse(1e-2, std::nullopt));
    c.emplace_back("case2_eta5e-3", naca_coarse(5e-3, std::nullopt));
    c.emplace_back("case3_eta1e-2_chi5e3_delta100", naca_coarse(1e-2, SfdConfig{5e3, 100.0}));
    c.emplace_back("case4_eta1e-2_chi5e3_delta2", naca_coarse(1e-2, SfdConfig{5e3, 2.0}));
  } else if (id == "fig13") {
    c.emplace_back("case1_eta1e-2", naca_fine(1e-2, std::nullopt));
    c.emplace_back("case2_eta5e-4", naca_fine(5e-4, std::nullopt));
    c.emplace_back("case3_sfd_chi2e4", naca_fine(std::nullopt, SfdConfig{2e4, 100.0}));
    c.emplace_back("case4_eta5e-4_chi2e4", naca_fine(5e-4, SfdConfig{2e4, 100.0}));
  } else if (id == "fig17") {
    c.emplace_back("case1_eta1e-3", cylinder(2, 4e-4, 1e-3, std::nullopt));
    c.emplace_back("case2_eta5e-4", cylinder(2, 4e-4, 5e-4, std::nullopt));
    c.emplace_back("case3_eta1e-3_chi5e3", cylinder(2, 4e-4, 1e-3, SfdConfig{5e3, 100.0}));
    c.emplace_back("case4_eta5e-4_chi2e3", cylinder(2, 4e-4, 5e-4, SfdConfig{2e3, 100.0}));
  } else if (id == "fig19") {
    c = cylinder_orders(true);
  } else if (id == "table1") {
    c = cylinder_orders(false);
  } else if (id == "cylinder-smoke") {
    RunConfig r = cylinder(2, 4e-4, 5e-4, SfdConfig{2e3, 100.0});
    r.ns2d.x = {-1.0, 1.0, -10.0, 20.0, 0.03};
    r.ns2d.y = {-1.0, 1.0, -10.0, 10.0, 0.03};
    r.ns2d.target_nx = 0;
    r.ns2d.target_ny = 0;
    r.ns2d.stretch = 1.08115;
    r.ns2d.t_final = 150.0;
    c.emplace_back("smoke", r);
  } else if (id != "fig7" && id != "fig8") {
    std::string known;
    for (const auto& t : repro_targets()) known += (known.empty() ? "" : ", ") + t.id;
    throw ConfigError("repro: unknown target '" + requested + "' (known: " + known + ")");
  }
  for (auto& [name, cfg] : c) cfg.output_dir = name;
  return c;
}

void run_repro(const std::string& requested, const fs::path& out, std::ostream* log) {
  const std::string id = canonical(requested);
  const auto cases = repro_cases(id);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + out.string() + "': " + ec.message());
  if (id == "fig7") return fig7(out, log);
  if (id == "fig8") return fig8(out, log);
  for (const auto& [name, cfg] : cases) {
    if (log) *log << "== " << requested << " / " << name << std::endl;
    RunOptions o;
    o.out = out / name;
    o.log = log;
    run_config(cfg, o);
  }
  if (id == "table1") table1(out);
}

}  // namespace penalfr::io
