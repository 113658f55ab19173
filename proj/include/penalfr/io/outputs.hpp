// Table layouts for everything the runs write.
#pragma once

#include <span>

#include "penalfr/advect1d.hpp"
#include "penalfr/eigensolution.hpp"
#include "penalfr/io/csv.hpp"
#include "penalfr/ns2d/simulation.hpp"

namespace penalfr::io {

/// One row per eigenvalue per wavenumber: k_nondim, mode_id, class,
/// dispersion, dissipation. class is physical, solid or spurious; both
/// quantities are scaled by h/(P+1) like the physical branch.
CsvTable spectrum_table(const eigensolution::ModeSpectrum& s, double solid_tol = 1e-6);

/// Physical branch only: k_nondim, dispersion, dissipation, projection,
/// ambiguous.
CsvTable physical_table(const eigensolution::ModeSpectrum& s);

/// x, u (and in_solid).
CsvTable solution_table(const advect::AdvectionResult& r);

/// eta, chi_f, delta (empty when disabled), dt, flow_error, solid_error,
/// max_stable_dt, wall_time, ok, message.
CsvTable sweep_table(std::span<const advect::SweepRow> rows);

/// element, point, x, y, rho, rho_u, rho_v, E.
CsvTable field_table(const ns::CartesianMesh& mesh, const FlowField& U);

/// x, y, side, cp.
CsvTable surface_table(std::span<const ns::SurfacePoint> pts);

/// step, t, u_0, v_0, u_1, v_1, ...
std::vector<std::string> probe_header(std::size_t n_probes);
/// step, t, cl, cd.
std::vector<std::string> force_header();

}  // namespace penalfr::io
