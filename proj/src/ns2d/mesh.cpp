#include "penalfr/ns2d/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <zlib.h>

namespace penalfr::ns {

namespace {

double geometric_sum(double h, double r, int n) {
  double s = 0.0;
  double size = h;
  for (int k = 0; k < n; ++k) {
    size *= r;
    s += size;
  }
  return s;
}

int side_count(double h, double r, double dist) {
  if (dist <= 1e-12 * h) return 0;
  int n = 0;
  double s = 0.0;
  double size = h;
  while (s < dist * (1.0 - 1e-12)) {
    size *= r;
    s += size;
    ++n;
    if (n > 100000) throw std::invalid_argument("build_axis: stretching does not reach the domain edge");
  }
  return n;
}

// Ratio giving exactly `dist` with n elements.
double exact_ratio(double h, int n, double dist) {
  double lo = 1e-6;
  double hi = 1.0;
  while (geometric_sum(h, hi, n) < dist) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (geometric_sum(h, mid, n) < dist ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void check(const AxisSpec& s) {
  if (!(s.h0 > 0.0)) throw std::invalid_argument("mesh: core size must be positive");
  if (!(s.core_hi > s.core_lo)) throw std::invalid_argument("mesh: core upper bound must exceed lower bound");
  if (s.domain_lo > s.core_lo + 1e-12 || s.domain_hi < s.core_hi - 1e-12) {
    throw std::invalid_argument("mesh: core [" + std::to_string(s.core_lo) + ", " + std::to_string(s.core_hi) +
                                "] not inside domain [" + std::to_string(s.domain_lo) + ", " +
                                std::to_string(s.domain_hi) + "]");
  }
}

int axis_count(const AxisSpec& s, double ratio) {
  const int n_core = std::max(1, static_cast<int>(std::lround((s.core_hi - s.core_lo) / s.h0)));
  const double h = (s.core_hi - s.core_lo) / n_core;
  return n_core + side_count(h, ratio, s.core_lo - s.domain_lo) + side_count(h, ratio, s.domain_hi - s.core_hi);
}

}  // namespace

std::vector<double> build_axis(const AxisSpec& s, double ratio) {
  check(s);
  if (!(ratio >= 1.0)) throw std::invalid_argument("mesh: stretch ratio must be >= 1");
  const int n_core = std::max(1, static_cast<int>(std::lround((s.core_hi - s.core_lo) / s.h0)));
  const double h = (s.core_hi - s.core_lo) / n_core;

  const double d_lo = s.core_lo - s.domain_lo;
  const double d_hi = s.domain_hi - s.core_hi;
  const int n_lo = side_count(h, ratio, d_lo);
  const int n_hi = side_count(h, ratio, d_hi);

  std::vector<double> edges;
  edges.reserve(n_lo + n_core + n_hi + 1);
  if (n_lo > 0) {
    const double r = exact_ratio(h, n_lo, d_lo);
    std::vector<double> left;
    double pos = s.core_lo;
    double size = h;
    for (int k = 0; k < n_lo; ++k) {
      size *= r;
      pos -= size;
      left.push_back(pos);
    }
    left.back() = s.domain_lo;
    edges.assign(left.rbegin(), left.rend());
  }
  for (int k = 0; k <= n_core; ++k) edges.push_back(k == n_core ? s.core_hi : s.core_lo + k * h);
  if (n_hi > 0) {
    const double r = exact_ratio(h, n_hi, d_hi);
    double pos = s.core_hi;
    double size = h;
    for (int k = 0; k < n_hi; ++k) {
      size *= r;
      pos += size;
      edges.push_back(pos);
    }
    edges.back() = s.domain_hi;
  }
  return edges;
}

double ratio_for_count(const AxisSpec& s, int target) {
  check(s);
  double best = 1.0001;
  int best_err = std::abs(axis_count(s, best) - target);
  // Counts fall monotonically with the ratio; scan then refine around the best.
  for (double r = 1.0001; r <= 3.0; r *= 1.002) {
    const int err = std::abs(axis_count(s, r) - target);
    if (err < best_err) {
      best_err = err;
      best = r;
    }
    if (axis_count(s, r) < target - best_err) break;
  }
  return best;
}

std::array<double, 2> mesh_ratios(const MeshSpec& spec) {
  return {spec.target_nx > 0 ? ratio_for_count(spec.x, spec.target_nx) : spec.stretch,
          spec.target_ny > 0 ? ratio_for_count(spec.y, spec.target_ny) : spec.stretch};
}

CartesianMesh build_mesh(const MeshSpec& spec, int order) {
  const auto r = mesh_ratios(spec);
  return CartesianMesh(build_axis(spec.x, r[0]), build_axis(spec.y, r[1]), order, spec.periodic_x, spec.periodic_y);
}

CartesianMesh::CartesianMesh(std::vector<double> x_edges, std::vector<double> y_edges, int order, bool periodic_x,
                             bool periodic_y)
    : xe_(std::move(x_edges)),
      ye_(std::move(y_edges)),
      nx_(static_cast<int>(xe_.size()) - 1),
      ny_(static_cast<int>(ye_.size()) - 1),
      periodic_x_(periodic_x),
      periodic_y_(periodic_y),
      basis_(order < 0 ? 0 : order),
      corr_(fr::build_correction_gradients(basis_)) {
  if (order < 0) throw std::invalid_argument("mesh: order must be >= 0");
  if (nx_ < 1 || ny_ < 1) throw std::invalid_argument("mesh: need at least one element per axis");
  for (int i = 0; i < nx_; ++i) {
    if (!(hx(i) > 0.0)) throw std::invalid_argument("mesh: x edges must increase");
  }
  for (int j = 0; j < ny_; ++j) {
    if (!(hy(j) > 0.0)) throw std::invalid_argument("mesh: y edges must increase");
  }
}

double CartesianMesh::x(int e, int p) const {
  const int i = ei(e);
  return 0.5 * (xe_[i] + xe_[i + 1]) + 0.5 * hx(i) * basis_.nodes()[p % q()];
}

double CartesianMesh::y(int e, int p) const {
  const int j = ej(e);
  return 0.5 * (ye_[j] + ye_[j + 1]) + 0.5 * hy(j) * basis_.nodes()[p / q()];
}

double CartesianMesh::weight(int e, int p) const {
  const auto w = basis_.weights();
  return w[p % q()] * w[p / q()] * jacobian(e);
}

std::array<int, 4> CartesianMesh::neighbors(int e) const {
  const int i = ei(e);
  const int j = ej(e);
  auto wrap = [](int k, int n, bool periodic) { return (k < 0 || k >= n) ? (periodic ? (k + n) % n : -1) : k; };
  const int il = wrap(i - 1, nx_, periodic_x_);
  const int ir = wrap(i + 1, nx_, periodic_x_);
  const int jb = wrap(j - 1, ny_, periodic_y_);
  const int jt = wrap(j + 1, ny_, periodic_y_);
  return {il < 0 ? -1 : element(il, j), ir < 0 ? -1 : element(ir, j), jb < 0 ? -1 : element(i, jb),
          jt < 0 ? -1 : element(i, jt)};
}

std::uint32_t CartesianMesh::hash() const {
  uLong c = crc32(0L, Z_NULL, 0);
  const int header[3] = {order(), periodic_x_ ? 1 : 0, periodic_y_ ? 1 : 0};
  c = crc32(c, reinterpret_cast<const Bytef*>(header), sizeof(header));
  c = crc32(c, reinterpret_cast<const Bytef*>(xe_.data()), static_cast<uInt>(xe_.size() * sizeof(double)));
  c = crc32(c, reinterpret_cast<const Bytef*>(ye_.data()), static_cast<uInt>(ye_.size() * sizeof(double)));
  return static_cast<std::uint32_t>(c);
}

}  // namespace penalfr::ns
