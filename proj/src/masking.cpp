#include "penalfr/masking.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace penalfr::mask {

std::string_view to_string(Geometry g) {
  switch (g) {
    case Geometry::slab: return "slab";
    case Geometry::circle: return "circle";
    case Geometry::naca0012: return "naca0012";
  }
  return "unknown";
}

Geometry geometry_from_string(std::string_view name) {
  if (name == "slab") return Geometry::slab;
  if (name == "circle") return Geometry::circle;
  if (name == "naca0012") return Geometry::naca0012;
  throw std::invalid_argument("unknown geometry '" + std::string(name) + "'");
}

bool slab(double x, double delta) { return x > 0.0 && x < delta; }

bool circle(double x, double y, Point2 center, double diameter) {
  const double dx = x - center.x;
  const double dy = y - center.y;
  const double r = 0.5 * diameter;
  return dx * dx + dy * dy < r * r;
}

double naca0012_half_thickness(double xc) {
  if (xc < 0.0 || xc > 1.0) return 0.0;
  constexpr double t = 0.12;
  return 5.0 * t *
         (0.2969 * std::sqrt(xc) - 0.1260 * xc - 0.3516 * xc * xc + 0.2843 * xc * xc * xc -
          0.1036 * xc * xc * xc * xc);
}

bool naca0012(double x, double y) {
  const double xc = x + 0.5;
  if (xc < 0.0 || xc > 1.0) return false;
  return std::abs(y) < naca0012_half_thickness(xc);
}

std::size_t MaskField::solid_count() const {
  std::size_t n = 0;
  for (auto v : values) n += v;
  return n;
}

std::vector<std::size_t> MaskField::solid_indices() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i]) idx.push_back(i);
  }
  return idx;
}

MaskField slab_mask(std::span<const double> x, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("slab_mask: delta must be positive");
  return make_mask(x, Geometry::slab, [&](std::size_t i) { return slab(x[i], delta); });
}

Penalization Penalization::with_eta(double eta, std::array<double, 2> u_s) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("penalization parameter eta must be positive and finite");
  }
  Penalization p;
  p.eta_ = eta;
  p.u_s_ = u_s;
  return p;
}

double Penalization::eta() const {
  if (!eta_) throw std::logic_error("penalization is disabled");
  return *eta_;
}

double penalize_advection(double u, bool chi, const Penalization& params) {
  if (!chi || !params.enabled()) return 0.0;
  return -(u - params.u_s()[0]) / params.eta();
}

State penalize_ns(const State& U, bool chi, const Penalization& params) {
  const double rho = U[0];
  if (!(rho > 0.0)) throw std::domain_error("penalize_ns: non-positive density");
  if (!chi || !params.enabled()) return {0.0, 0.0, 0.0, 0.0};
  const double k = 1.0 / params.eta();
  const double u = U[1] / rho;
  const double v = U[2] / rho;
  const auto& us = params.u_s();
  const double ke_target = 0.5 * rho * (us[0] * us[0] + us[1] * us[1]);
  const double ke = 0.5 * rho * (u * u + v * v);
  return {0.0, k * (rho * us[0] - U[1]), k * (rho * us[1] - U[2]), k * (ke_target - ke)};
}

double effective_wavenumber(double k, double solid_ratio) {
  if (!(solid_ratio >= 0.0 && solid_ratio < 1.0)) {
    throw std::invalid_argument("effective_wavenumber: solid ratio must lie in [0, 1)");
  }
  return k / (1.0 - solid_ratio);
}

}  // namespace penalfr::mask
