// Solid-region indicator functions and volume-penalization sources.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace penalfr::mask {

enum class Geometry { slab, circle, naca0012 };

std::string_view to_string(Geometry g);
/// Throws std::invalid_argument on an unknown name.
Geometry geometry_from_string(std::string_view name);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// 1 on the open interval (0, delta).
bool slab(double x, double delta);

/// 1 strictly inside the circle of diameter d.
bool circle(double x, double y, Point2 center, double diameter);

/// NACA0012 half thickness at chordwise position xc in [0, 1] (closed
/// trailing edge).
double naca0012_half_thickness(double xc);

/// 1 strictly inside a unit-chord NACA0012 spanning x in [-0.5, 0.5].
bool naca0012(double x, double y);

/// Point-wise binary mask over a set of solution points.
struct MaskField {
  std::vector<std::uint8_t> values;
  double solid_ratio = 0.0;
  Geometry geometry = Geometry::slab;

  std::size_t solid_count() const;
  /// Indices of the solid points in ascending order.
  std::vector<std::size_t> solid_indices() const;
};

/// Builds a mask by evaluating `inside` at each coordinate.
template <class Inside>
MaskField make_mask(std::span<const double> x, Geometry geometry, Inside&& inside) {
  MaskField m;
  m.geometry = geometry;
  m.values.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) m.values[i] = inside(i) ? 1 : 0;
  m.solid_ratio = x.empty() ? 0.0 : static_cast<double>(m.solid_count()) / static_cast<double>(x.size());
  return m;
}

MaskField slab_mask(std::span<const double> x, double delta);

/// Penalization parameter eta and target solid velocity. A disabled instance
/// stands for eta -> infinity.
class Penalization {
 public:
  static Penalization disabled() { return Penalization(); }
  /// Throws std::invalid_argument unless eta > 0.
  static Penalization with_eta(double eta, std::array<double, 2> u_s = {0.0, 0.0});

  bool enabled() const { return eta_.has_value(); }
  /// Throws std::logic_error when disabled.
  double eta() const;
  /// 1/eta, or 0 when disabled.
  double inverse_eta() const { return eta_ ? 1.0 / *eta_ : 0.0; }
  const std::array<double, 2>& u_s() const { return u_s_; }

  friend bool operator==(const Penalization&, const Penalization&) = default;

 private:
  Penalization() = default;
  std::optional<double> eta_;
  std::array<double, 2> u_s_{0.0, 0.0};
};

/// -(chi/eta)(u - u_s) using the first target component.
double penalize_advection(double u, bool chi, const Penalization& params);

/// 2D conserved state (rho, rho u, rho v, E).
using State = std::array<double, 4>;

/// (chi/eta) (0, rho u_s - rho u, rho v_s - rho v, rho/2 (|u_s|^2 - |u|^2)).
/// Throws std::domain_error for rho <= 0.
State penalize_ns(const State& U, bool chi, const Penalization& params);

/// k / (1 - r). Throws std::invalid_argument unless 0 <= r < 1.
double effective_wavenumber(double k, double solid_ratio);

}  // namespace penalfr::mask
