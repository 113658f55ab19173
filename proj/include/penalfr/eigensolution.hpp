// Eigensolution (von Neumann type) analysis of the penalized / SFD advection
// discretization on a periodic 1D mesh with a Bloch phase across the domain.
//
// Conventions used throughout: du/dt = M u. For an eigenvalue lambda of M,
//   dispersion  = -Im(lambda) / c
//   dissipation =  Re(lambda)
// and both are reported multiplied by h / (P + 1) next to the wavenumber
// k_hat h / (P + 1), with k_hat the wavenumber in the fluid region.
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "penalfr/fr_core.hpp"
#include "penalfr/masking.hpp"
#include "penalfr/sfd.hpp"

namespace penalfr::eigensolution {

using Complex = std::complex<double>;

/// Uniform periodic mesh on [x_min, x_max] with an optional solid slab that
/// starts at x = 0 and spans `slab_elements` whole elements.
struct AdvectionSetup {
  int N = 40;
  int P = 3;
  double c = 1.0;
  double lambda = 1.0;
  int slab_elements = 1;
  double x_min = -1.0;
  double x_max = 1.0;

  double length() const { return x_max - x_min; }
  double h() const { return length() / N; }
  double delta() const { return slab_elements * h(); }
  double solid_ratio() const { return static_cast<double>(slab_elements) / N; }
  /// Index of the first solid element. Throws std::invalid_argument if x = 0
  /// is not an element interface or the slab does not fit.
  int first_solid_element() const;
  /// Solution point coordinates, element-major.
  std::vector<double> solution_points() const;
  fr::ElementOperators element_operators() const;
};

struct GlobalOperator {
  Eigen::MatrixXcd matrix;
  int N = 0;
  int P = 0;
  double k = 0.0;
  double solid_ratio = 0.0;
  double domain_length = 2.0;
  Complex phase_left;   // multiplies L in the first block row
  Complex phase_right;  // multiplies R in the last block row
  bool has_filter_block = false;
  std::vector<double> x;              // field solution points
  std::vector<std::uint8_t> solid;    // per field point
  int field_size() const { return N * (P + 1); }
};

/// Periodic block matrix with exp(-i k L_dom) L and exp(i k L_dom) R corners,
/// L_dom = 2T the domain length. Throws std::invalid_argument for N < 2.
GlobalOperator assemble_periodic(const fr::ElementOperators& ops, int N, double k, double domain_length = 2.0);

/// Periodic matrix with the slab elements modified by -(1/eta) I - chi_f I,
/// a chi_f I column into an appended q_bar block and q_bar rows carrying I/Delta
/// and -I/Delta. Terms of a disabled penalization or SFD are omitted; the q_bar
/// block is appended only when SFD is enabled.
GlobalOperator assemble_ibm_sfd(const AdvectionSetup& setup, double k, const mask::Penalization& pen,
                                const sfd::SfdParams& sfd);

struct Decomposition {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;  // empty unless requested
  double max_residual = 0.0;  // max ||M v - lambda v|| / ||M|| when vectors requested
};

Decomposition decompose(const Eigen::MatrixXcd& matrix, bool with_vectors = true);

/// Projection modulus of every eigenvector onto the discrete plane wave
/// exp(i k_hat s) sampled at fluid points, s the fluid coordinate measured
/// downstream from the slab end. Values in [0, 1].
std::vector<double> plane_wave_projections(const GlobalOperator& op, const Decomposition& dec, double k_hat);

struct PhysicalSelection {
  int index = -1;
  Complex eigenvalue;
  double projection = 0.0;
  bool ambiguous = false;
};

/// Picks the eigenvalue with the largest plane-wave projection. When the
/// runner-up lies within 1% of the best the choice is flagged as ambiguous and
/// resolved by nearest-eigenvalue continuity to `previous`, if given.
PhysicalSelection extract_physical_mode(const Decomposition& dec, std::span<const double> projections,
                                        std::optional<Complex> previous);

/// Eigenvalues present at every wavenumber sample to within rel_tol
/// (relative to max(|lambda|, 1)). Throws std::invalid_argument for fewer than
/// three samples.
std::vector<Complex> find_solid_modes(const std::vector<std::vector<Complex>>& per_k, double rel_tol = 1e-8);

struct AnalysisCase {
  AdvectionSetup setup;
  bool immersed = true;  // false: plain periodic operator
  mask::Penalization penalization = mask::Penalization::disabled();
  sfd::SfdParams sfd = sfd::SfdParams::disabled();
};

GlobalOperator assemble(const AnalysisCase& c, double k);

/// k_hat h/(P+1) -> Bloch wavenumber k of the global matrix.
double bloch_wavenumber(const AdvectionSetup& s, double k_nondim, bool immersed);

/// 64 uniform samples of k_hat h/(P+1) in (0, pi] unless configured.
std::vector<double> default_wavenumbers(int samples = 64, double k_max = 3.141592653589793);

struct ModeSpectrum {
  std::vector<double> k_nondim;
  std::vector<std::vector<Complex>> eigenvalues;  // semi-discrete lambda (or fully-discrete log(g)/dt)
  std::vector<PhysicalSelection> physical;
  std::vector<Complex> solid_modes;
  double scale = 1.0;  // h / (P + 1)
  double c = 1.0;

  double dispersion(std::size_t i) const { return -physical[i].eigenvalue.imag() / c * scale; }
  double dissipation(std::size_t i) const { return physical[i].eigenvalue.real() * scale; }
  static double dispersion_of(Complex lam, double c, double scale) { return -lam.imag() / c * scale; }
  static double dissipation_of(Complex lam, double scale) { return lam.real() * scale; }
};

ModeSpectrum semi_discrete_sweep(const AnalysisCase& c, std::span<const double> k_nondim,
                                 double solid_tol = 1e-8);

/// A = I + dt M + (dt M)^2 / 2 + (dt M)^3 / 6.
Eigen::MatrixXcd rk3_amplification(const Eigen::MatrixXcd& M, double dt);

struct FullyDiscreteSpectrum {
  Eigen::VectorXcd g;
  std::vector<double> dissipation;  // ln|g| / dt
  bool unstable = false;
};

/// Throws std::invalid_argument for dt <= 0.
FullyDiscreteSpectrum fully_discrete_spectrum(const GlobalOperator& M, double dt);

/// Fully-discrete sweep: physical mode from the eigenvectors of A, eigenvalues
/// reported as log(g)/dt so the semi-discrete conventions carry over.
ModeSpectrum fully_discrete_sweep(const AnalysisCase& c, double dt, std::span<const double> k_nondim,
                                  double solid_tol = 1e-8);

enum class Scheme { penalization_only, sfd_only, combined };

/// How chi_f follows the searched eta in the combined scheme.
///  tied:      chi_f = 1 / eta at every trial value
///  guideline: chi_f = 1 / dt held fixed while eta varies
enum class Coupling { tied, guideline };

struct CriticalSearch {
  AdvectionSetup setup;
  double dt = 1e-3;
  Scheme scheme = Scheme::penalization_only;
  Coupling coupling = Coupling::tied;
  double sfd_delta = 100.0;
  double lo_ratio = 0.2;   // bracket on eta / dt
  double hi_ratio = 2.0;
  double tol_ratio = 1e-3;
  std::vector<double> k_samples{0.05, 0.7, 1.6, 2.9};  // k_nondim samples
  double solid_tol = 1e-8;
};

struct CriticalResult {
  double eta_critical = 0.0;
  double ratio = 0.0;  // eta_critical / dt
  int iterations = 0;
};

/// Largest ln|g|/dt over the wavenumber-constant (solid) modes of the
/// fully-discrete operator for a trial eta.
double max_solid_dissipation(const CriticalSearch& search, double eta);

/// Bisection on eta for the zero crossing of the solid-mode dissipation.
/// Throws std::runtime_error when the bracket has no sign change.
CriticalResult critical_parameter_search(const CriticalSearch& search);

AnalysisCase case_for(const CriticalSearch& search, double eta);

}  // namespace penalfr::eigensolution
