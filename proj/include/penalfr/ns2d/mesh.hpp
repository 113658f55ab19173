// Axis-aligned Cartesian element grids: a uniform core block with geometric
// stretching out to the domain edges.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "penalfr/fr_core.hpp"

namespace penalfr::ns {

struct AxisSpec {
  double core_lo = -1.0;
  double core_hi = 1.0;
  double domain_lo = -1.0;
  double domain_hi = 1.0;
  double h0 = 0.1;  // core element size
};

/// Element edges along one axis. The core holds round((hi - lo) / h0)
/// uniform elements; each outer side uses the fewest elements whose sizes
/// grow geometrically by `ratio` from the core size, with the per-side ratio
/// then re-solved so the last edge lands exactly on the domain edge.
/// Throws std::invalid_argument for an inconsistent spec or ratio < 1.
std::vector<double> build_axis(const AxisSpec& spec, double ratio);

/// Stretch ratio in [1.0001, 3] whose axis has the element count closest to
/// `target` (ties resolved toward the smaller ratio).
double ratio_for_count(const AxisSpec& spec, int target);

struct MeshSpec {
  AxisSpec x;
  AxisSpec y;
  double stretch = 1.1;  // ignored for an axis that has a target count
  int target_nx = 0;     // 0: use `stretch`
  int target_ny = 0;
  bool periodic_x = false;
  bool periodic_y = false;
};

class CartesianMesh {
 public:
  /// Throws std::invalid_argument for fewer than one element per axis,
  /// non-increasing edges or P < 0.
  CartesianMesh(std::vector<double> x_edges, std::vector<double> y_edges, int order, bool periodic_x = false,
                bool periodic_y = false);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int n_elements() const { return nx_ * ny_; }
  int order() const { return basis_.order(); }
  int q() const { return basis_.size(); }           // points per direction
  int points_per_element() const { return q() * q(); }
  std::size_t n_points() const { return static_cast<std::size_t>(n_elements()) * points_per_element(); }
  bool periodic_x() const { return periodic_x_; }
  bool periodic_y() const { return periodic_y_; }

  int element(int i, int j) const { return j * nx_ + i; }
  int ei(int e) const { return e % nx_; }
  int ej(int e) const { return e / nx_; }
  double hx(int i) const { return xe_[i + 1] - xe_[i]; }
  double hy(int j) const { return ye_[j + 1] - ye_[j]; }
  const std::vector<double>& x_edges() const { return xe_; }
  const std::vector<double>& y_edges() const { return ye_; }

  /// Solution point p = b * q + a, a along x and b along y.
  double x(int e, int p) const;
  double y(int e, int p) const;
  /// Quadrature weight times Jacobian (physical area element) of point p.
  double weight(int e, int p) const;
  double jacobian(int e) const { return 0.25 * hx(ei(e)) * hy(ej(e)); }

  /// {left, right, bottom, top}; -1 on a non-periodic boundary.
  std::array<int, 4> neighbors(int e) const;

  const fr::NodalBasis& basis() const { return basis_; }
  const fr::CorrectionGradients& correction() const { return corr_; }

  /// crc32 over order, periodicity flags and edge coordinates.
  std::uint32_t hash() const;

 private:
  std::vector<double> xe_;
  std::vector<double> ye_;
  int nx_;
  int ny_;
  bool periodic_x_;
  bool periodic_y_;
  fr::NodalBasis basis_;
  fr::CorrectionGradients corr_;
};

CartesianMesh build_mesh(const MeshSpec& spec, int order);

/// Stretch ratio actually used per axis by build_mesh.
std::array<double, 2> mesh_ratios(const MeshSpec& spec);

}  // namespace penalfr::ns
