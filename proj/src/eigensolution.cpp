#include "penalfr/eigensolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <lapacke.h>

namespace penalfr::eigensolution {

namespace {

constexpr Complex kI{0.0, 1.0};

void place(Eigen::MatrixXcd& M, int row_block, int col_block, int n, const Eigen::MatrixXd& B, Complex factor) {
  M.block(row_block * n, col_block * n, n, n) += factor * B.cast<Complex>();
}

}  // namespace

int AdvectionSetup::first_solid_element() const {
  if (N < 2 || P < 0) throw std::invalid_argument("advection setup: need N >= 2 and P >= 0");
  const double pos = (0.0 - x_min) / h();
  const int e = static_cast<int>(std::lround(pos));
  if (std::abs(pos - e) > 1e-9 * N) {
    throw std::invalid_argument("slab start x = 0 is not an element interface (offset " + std::to_string(pos) +
                                " elements)");
  }
  if (slab_elements < 0 || e < 0 || e + slab_elements > N) {
    throw std::invalid_argument("slab of " + std::to_string(slab_elements) + " elements does not fit the mesh");
  }
  return e;
}

std::vector<double> AdvectionSetup::solution_points() const {
  const auto basis = fr::build_nodal_basis(P);
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(N) * (P + 1));
  for (int e = 0; e < N; ++e) {
    const double xc = x_min + (e + 0.5) * h();
    for (double r : basis.nodes()) x.push_back(xc + 0.5 * h() * r);
  }
  return x;
}

fr::ElementOperators AdvectionSetup::element_operators() const {
  const auto basis = fr::build_nodal_basis(P);
  return fr::build_element_operators(basis, fr::build_correction_gradients(basis), h(), c, lambda);
}

GlobalOperator assemble_periodic(const fr::ElementOperators& ops, int N, double k, double domain_length) {
  if (N < 2) throw std::invalid_argument("assemble_periodic: need at least 2 elements, got " + std::to_string(N));
  const int n = static_cast<int>(ops.C.rows());
  GlobalOperator op;
  op.N = N;
  op.P = n - 1;
  op.k = k;
  op.domain_length = domain_length;
  op.phase_left = std::exp(-kI * k * domain_length);
  op.phase_right = std::exp(kI * k * domain_length);
  op.matrix = Eigen::MatrixXcd::Zero(N * n, N * n);
  for (int e = 0; e < N; ++e) {
    place(op.matrix, e, e, n, ops.C, 1.0);
    if (e > 0) place(op.matrix, e, e - 1, n, ops.L, 1.0);
    if (e < N - 1) place(op.matrix, e, e + 1, n, ops.R, 1.0);
  }
  place(op.matrix, 0, N - 1, n, ops.L, op.phase_left);
  place(op.matrix, N - 1, 0, n, ops.R, op.phase_right);
  op.solid.assign(static_cast<std::size_t>(N) * n, 0);
  return op;
}

GlobalOperator assemble_ibm_sfd(const AdvectionSetup& setup, double k, const mask::Penalization& pen,
                                const sfd::SfdParams& sfd) {
  sfd.validate();
  const int first = setup.first_solid_element();
  const int n = setup.P + 1;
  const int nf = setup.N * n;
  const int ns = setup.slab_elements * n;
  GlobalOperator op = assemble_periodic(setup.element_operators(), setup.N, k, setup.length());
  op.x = setup.solution_points();
  op.solid_ratio = setup.solid_ratio();
  const auto mask = mask::slab_mask(op.x, setup.delta());
  op.solid = mask.values;

  const int s0 = first * n;
  if (pen.enabled()) {
    for (int i = 0; i < ns; ++i) op.matrix(s0 + i, s0 + i) -= pen.inverse_eta();
  }
  if (!sfd.enabled) return op;

  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(nf + ns, nf + ns);
  M.topLeftCorner(nf, nf) = op.matrix;
  for (int i = 0; i < ns; ++i) {
    M(s0 + i, s0 + i) -= sfd.chi_f;
    M(s0 + i, nf + i) += sfd.chi_f;
    M(nf + i, s0 + i) = 1.0 / sfd.delta;
    M(nf + i, nf + i) = -1.0 / sfd.delta;
  }
  op.matrix = std::move(M);
  op.has_filter_block = true;
  return op;
}

Decomposition decompose(const Eigen::MatrixXcd& matrix, bool with_vectors) {
  if (matrix.rows() != matrix.cols()) throw std::invalid_argument("decompose: matrix must be square");
  const auto n = static_cast<lapack_int>(matrix.rows());
  Eigen::MatrixXcd work = matrix;
  Decomposition d;
  d.values.resize(n);
  if (with_vectors) d.vectors.resize(n, n);
  auto* vr = with_vectors ? reinterpret_cast<lapack_complex_double*>(d.vectors.data()) : nullptr;
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', with_vectors ? 'V' : 'N', n, reinterpret_cast<lapack_complex_double*>(work.data()),
                    n, reinterpret_cast<lapack_complex_double*>(d.values.data()), nullptr, 1, vr, std::max<lapack_int>(n, 1));
  if (info != 0) throw std::runtime_error("eigenvalue solver failed (zgeev info " + std::to_string(info) + ")");
  if (with_vectors) {
    const double norm = std::max(matrix.norm(), std::numeric_limits<double>::min());
    for (Eigen::Index j = 0; j < d.values.size(); ++j) {
      const double r = (matrix * d.vectors.col(j) - d.values(j) * d.vectors.col(j)).norm() /
                       (norm * std::max(d.vectors.col(j).norm(), 1e-300));
      d.max_residual = std::max(d.max_residual, r);
    }
  }
  return d;
}

std::vector<double> plane_wave_projections(const GlobalOperator& op, const Decomposition& dec, double k_hat) {
  if (dec.vectors.size() == 0) throw std::invalid_argument("plane_wave_projections: eigenvectors required");
  const int nf = op.field_size();
  // Fluid coordinate: distance travelled downstream from the slab end.
  double slab_end = 0.0;
  bool any_solid = false;
  double x_lo = op.x.empty() ? 0.0 : op.x.front();
  for (int i = 0; i < nf; ++i) {
    if (op.solid[i]) {
      any_solid = true;
      slab_end = std::max(slab_end, op.x[i]);
    }
  }
  const double length = op.domain_length;
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(nf);
  for (int i = 0; i < nf; ++i) {
    if (op.solid[i]) continue;
    double s = op.x.empty() ? static_cast<double>(i) : op.x[i] - x_lo;
    if (any_solid) s = op.x[i] >= slab_end ? op.x[i] - slab_end : op.x[i] + length - slab_end;
    w(i) = std::exp(kI * k_hat * s);
  }
  const double wn = w.norm();
  std::vector<double> proj(static_cast<std::size_t>(dec.values.size()), 0.0);
  for (Eigen::Index j = 0; j < dec.values.size(); ++j) {
    const auto v = dec.vectors.col(j).head(nf);
    const double vn = v.norm();
    if (vn <= 0.0 || wn <= 0.0) continue;
    proj[j] = std::abs(w.dot(v)) / (wn * vn);
  }
  return proj;
}

PhysicalSelection extract_physical_mode(const Decomposition& dec, std::span<const double> projections,
                                        std::optional<Complex> previous) {
  if (projections.size() != static_cast<std::size_t>(dec.values.size()) || projections.empty()) {
    throw std::invalid_argument("extract_physical_mode: projection count does not match the spectrum");
  }
  const auto best_it = std::max_element(projections.begin(), projections.end());
  const double best = *best_it;
  PhysicalSelection sel;
  sel.index = static_cast<int>(best_it - projections.begin());
  std::vector<int> close;
  for (std::size_t j = 0; j < projections.size(); ++j) {
    if (projections[j] >= 0.99 * best) close.push_back(static_cast<int>(j));
  }
  sel.ambiguous = close.size() > 1;
  if (sel.ambiguous && previous) {
    double dist = std::numeric_limits<double>::infinity();
    for (int j : close) {
      const double d = std::abs(dec.values(j) - *previous);
      if (d < dist) {
        dist = d;
        sel.index = j;
      }
    }
  }
  sel.eigenvalue = dec.values(sel.index);
  sel.projection = projections[sel.index];
  return sel;
}

std::vector<Complex> find_solid_modes(const std::vector<std::vector<Complex>>& per_k, double rel_tol) {
  if (per_k.size() < 3) throw std::invalid_argument("find_solid_modes: need at least 3 wavenumber samples");
  std::vector<Complex> out;
  for (const Complex lam : per_k.front()) {
    const double tol = rel_tol * std::max(std::abs(lam), 1.0);
    bool everywhere = true;
    for (std::size_t s = 1; s < per_k.size() && everywhere; ++s) {
      everywhere = std::any_of(per_k[s].begin(), per_k[s].end(),
                               [&](Complex mu) { return std::abs(mu - lam) <= tol; });
    }
    if (everywhere) out.push_back(lam);
  }
  return out;
}

GlobalOperator assemble(const AnalysisCase& c, double k) {
  if (c.immersed) return assemble_ibm_sfd(c.setup, k, c.penalization, c.sfd);
  auto op = assemble_periodic(c.setup.element_operators(), c.setup.N, k, c.setup.length());
  op.x = c.setup.solution_points();
  return op;
}

double bloch_wavenumber(const AdvectionSetup& s, double k_nondim, bool immersed) {
  const double k_hat = k_nondim * (s.P + 1) / s.h();
  return immersed ? k_hat * (1.0 - s.solid_ratio()) : k_hat;
}

std::vector<double> default_wavenumbers(int samples, double k_max) {
  if (samples < 1) throw std::invalid_argument("default_wavenumbers: need at least one sample");
  std::vector<double> k(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) k[i] = k_max * (i + 1) / samples;
  return k;
}

namespace {

template <class SpectrumOf>
ModeSpectrum sweep(const AnalysisCase& c, std::span<const double> k_nondim, double solid_tol, SpectrumOf&& spectrum_of) {
  ModeSpectrum out;
  out.scale = c.setup.h() / (c.setup.P + 1);
  out.c = c.setup.c;
  std::optional<Complex> previous;
  for (double kn : k_nondim) {
    const double k = bloch_wavenumber(c.setup, kn, c.immersed);
    const double k_hat = kn * (c.setup.P + 1) / c.setup.h();
    const auto op = assemble(c, k);
    auto dec = spectrum_of(op);
    const auto proj = plane_wave_projections(op, dec, k_hat);
    const auto sel = extract_physical_mode(dec, proj, previous);
    previous = sel.eigenvalue;
    out.k_nondim.push_back(kn);
    out.eigenvalues.emplace_back(dec.values.data(), dec.values.data() + dec.values.size());
    out.physical.push_back(sel);
  }
  if (out.eigenvalues.size() >= 3) out.solid_modes = find_solid_modes(out.eigenvalues, solid_tol);
  return out;
}

}  // namespace

ModeSpectrum semi_discrete_sweep(const AnalysisCase& c, std::span<const double> k_nondim, double solid_tol) {
  return sweep(c, k_nondim, solid_tol, [](const GlobalOperator& op) { return decompose(op.matrix, true); });
}

Eigen::MatrixXcd rk3_amplification(const Eigen::MatrixXcd& M, double dt) {
  const Eigen::Index n = M.rows();
  const Eigen::MatrixXcd Z = dt * M;
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd inner = 0.5 * I + Z / 6.0;
  inner = I + Z * inner;
  return I + Z * inner;
}

FullyDiscreteSpectrum fully_discrete_spectrum(const GlobalOperator& M, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("fully_discrete_spectrum: dt must be positive");
  const auto dec = decompose(rk3_amplification(M.matrix, dt), false);
  FullyDiscreteSpectrum out;
  out.g = dec.values;
  out.dissipation.reserve(static_cast<std::size_t>(out.g.size()));
  for (Eigen::Index i = 0; i < out.g.size(); ++i) {
    const double d = std::log(std::abs(out.g(i))) / dt;
    out.dissipation.push_back(d);
    if (d > 0.0) out.unstable = true;
  }
  return out;
}

ModeSpectrum fully_discrete_sweep(const AnalysisCase& c, double dt, std::span<const double> k_nondim,
                                  double solid_tol) {
  if (!(dt > 0.0)) throw std::invalid_argument("fully_discrete_sweep: dt must be positive");
  return sweep(c, k_nondim, solid_tol, [dt](const GlobalOperator& op) {
    auto dec = decompose(rk3_amplification(op.matrix, dt), true);
    for (Eigen::Index i = 0; i < dec.values.size(); ++i) dec.values(i) = std::log(dec.values(i)) / dt;
    return dec;
  });
}

AnalysisCase case_for(const CriticalSearch& search, double eta) {
  AnalysisCase c;
  c.setup = search.setup;
  c.immersed = true;
  switch (search.scheme) {
    case Scheme::penalization_only:
      c.penalization = mask::Penalization::with_eta(eta);
      break;
    case Scheme::sfd_only:
      c.sfd = sfd::SfdParams::with(1.0 / eta, search.sfd_delta);
      break;
    case Scheme::combined: {
      c.penalization = mask::Penalization::with_eta(eta);
      const double chi = search.coupling == Coupling::tied ? 1.0 / eta : 1.0 / search.dt;
      c.sfd = sfd::SfdParams::with(chi, search.sfd_delta);
      break;
    }
  }
  return c;
}

double max_solid_dissipation(const CriticalSearch& search, double eta) {
  const auto c = case_for(search, eta);
  std::vector<std::vector<Complex>> per_k;
  for (double kn : search.k_samples) {
    const auto op = assemble(c, bloch_wavenumber(c.setup, kn, true));
    const auto fd = fully_discrete_spectrum(op, search.dt);
    per_k.emplace_back(fd.g.data(), fd.g.data() + fd.g.size());
  }
  const auto solid = find_solid_modes(per_k, search.solid_tol);
  if (solid.empty()) {
    throw std::runtime_error("critical search: no wavenumber-independent modes found at eta = " +
                             std::to_string(eta));
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (const Complex g : solid) worst = std::max(worst, std::log(std::abs(g)) / search.dt);
  return worst;
}

CriticalResult critical_parameter_search(const CriticalSearch& search) {
  if (!(search.dt > 0.0) || !(search.lo_ratio > 0.0) || !(search.hi_ratio > search.lo_ratio)) {
    throw std::invalid_argument("critical search: need dt > 0 and 0 < lo_ratio < hi_ratio");
  }
  double lo = search.lo_ratio * search.dt;
  double hi = search.hi_ratio * search.dt;
  const double f_lo = max_solid_dissipation(search, lo);
  const double f_hi = max_solid_dissipation(search, hi);
  if (!(f_lo > 0.0) || !(f_hi <= 0.0)) {
    throw std::runtime_error("critical search: bracket eta/dt in [" + std::to_string(search.lo_ratio) + ", " +
                             std::to_string(search.hi_ratio) + "] has no sign change (" + std::to_string(f_lo) +
                             ", " + std::to_string(f_hi) + ")");
  }
  CriticalResult r;
  const double tol = search.tol_ratio * search.dt;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (max_solid_dissipation(search, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++r.iterations;
  }
  r.eta_critical = 0.5 * (lo + hi);
  r.ratio = r.eta_critical / search.dt;
  return r;
}

}  // namespace penalfr::eigensolution
