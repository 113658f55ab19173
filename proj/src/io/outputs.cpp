#include "penalfr/io/outputs.hpp"

#include <algorithm>
#include <cmath>

namespace penalfr::io {

CsvTable spectrum_table(const eigensolution::ModeSpectrum& s, double solid_tol) {
  using eigensolution::ModeSpectrum;
  CsvTable t;
  t.header = {"k_nondim", "mode_id", "class", "dispersion", "dissipation"};
  for (std::size_t i = 0; i < s.k_nondim.size(); ++i) {
    const auto& ev = s.eigenvalues[i];
    for (std::size_t m = 0; m < ev.size(); ++m) {
      std::string cls = "spurious";
      if (i < s.physical.size() && s.physical[i].index == static_cast<int>(m)) {
        cls = "physical";
      } else {
        for (const auto& sm : s.solid_modes) {
          if (std::abs(ev[m] - sm) <= solid_tol * std::max(std::abs(sm), 1.0)) {
            cls = "solid";
            break;
          }
        }
      }
      t.rows.push_back({s.k_nondim[i], static_cast<long long>(m), cls,
                        ModeSpectrum::dispersion_of(ev[m], s.c, s.scale), ModeSpectrum::dissipation_of(ev[m], s.scale)});
    }
  }
  return t;
}

CsvTable physical_table(const eigensolution::ModeSpectrum& s) {
  CsvTable t;
  t.header = {"k_nondim", "dispersion", "dissipation", "projection", "ambiguous"};
  for (std::size_t i = 0; i < s.physical.size(); ++i) {
    t.rows.push_back({s.k_nondim[i], s.dispersion(i), s.dissipation(i), s.physical[i].projection,
                      static_cast<long long>(s.physical[i].ambiguous ? 1 : 0)});
  }
  return t;
}

CsvTable solution_table(const advect::AdvectionResult& r) {
  CsvTable t;
  t.header = {"x", "u", "in_solid"};
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    t.rows.push_back({r.x[i], r.u[i], static_cast<long long>(i < r.solid.size() ? r.solid[i] : 0)});
  }
  return t;
}

namespace {

Cell opt_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(std::string()); }

}  // namespace

CsvTable sweep_table(std::span<const advect::SweepRow> rows) {
  CsvTable t;
  t.header = {"eta", "chi_f", "delta", "dt", "flow_error", "solid_error", "max_stable_dt", "wall_time", "ok", "message"};
  for (const auto& r : rows) {
    t.rows.push_back({opt_cell(r.params.eta), opt_cell(r.params.chi_f),
                      r.params.chi_f ? Cell(r.params.delta) : Cell(std::string()), r.dt, r.flow_error, r.solid_error,
                      r.max_stable_dt, r.wall_time, static_cast<long long>(r.ok ? 1 : 0), r.message});
  }
  return t;
}

CsvTable field_table(const ns::CartesianMesh& mesh, const FlowField& U) {
  CsvTable t;
  t.header = {"element", "point", "x", "y", "rho", "rho_u", "rho_v", "E"};
  const int np = mesh.points_per_element();
  t.rows.reserve(mesh.n_points());
  for (int e = 0; e < mesh.n_elements(); ++e) {
    for (int p = 0; p < np; ++p) {
      t.rows.push_back({static_cast<long long>(e), static_cast<long long>(p), mesh.x(e, p), mesh.y(e, p),
                        U.at(e, 0, p), U.at(e, 1, p), U.at(e, 2, p), U.at(e, 3, p)});
    }
  }
  return t;
}

CsvTable surface_table(std::span<const ns::SurfacePoint> pts) {
  CsvTable t;
  t.header = {"x", "y", "side", "cp"};
  for (const auto& p : pts) t.rows.push_back({p.x, p.y, std::string(p.upper ? "upper" : "lower"), p.cp});
  return t;
}

std::vector<std::string> probe_header(std::size_t n_probes) {
  std::vector<std::string> h{"step", "t"};
  for (std::size_t k = 0; k < n_probes; ++k) {
    h.push_back("u_" + std::to_string(k));
    h.push_back("v_" + std::to_string(k));
  }
  return h;
}

std::vector<std::string> force_header() { return {"step", "t", "cl", "cd"}; }

}  // namespace penalfr::io
