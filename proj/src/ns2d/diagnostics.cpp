#include "penalfr/ns2d/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <fftw3.h>

namespace penalfr::ns {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

mask::MaskField body_mask(const CartesianMesh& mesh, const BodyShape& body) {
  const int np = mesh.points_per_element();
  std::vector<double> xs(mesh.n_points());
  std::vector<double> ys(mesh.n_points());
  for (int e = 0; e < mesh.n_elements(); ++e) {
    for (int p = 0; p < np; ++p) {
      xs[static_cast<std::size_t>(e) * np + p] = mesh.x(e, p);
      ys[static_cast<std::size_t>(e) * np + p] = mesh.y(e, p);
    }
  }
  switch (body.geometry) {
    case mask::Geometry::circle:
      return mask::make_mask(xs, body.geometry,
                             [&](std::size_t i) { return mask::circle(xs[i], ys[i], body.center, body.size); });
    case mask::Geometry::naca0012:
      return mask::make_mask(xs, body.geometry, [&](std::size_t i) {
        return mask::naca0012((xs[i] - body.center.x) / body.size, (ys[i] - body.center.y) / body.size);
      });
    case mask::Geometry::slab:
      break;
  }
  throw std::invalid_argument("body_mask: slab is not a 2D body");
}

ForceCoefficients to_coefficients(double fx, double fy, double l_ref, double alpha_deg) {
  if (!(l_ref > 0.0)) throw std::invalid_argument("forces: reference length must be positive");
  const double a = alpha_deg * kPi / 180.0;
  const double drag = fx * std::cos(a) + fy * std::sin(a);
  const double lift = -fx * std::sin(a) + fy * std::cos(a);
  const double q = 0.5 * l_ref;  // rho V^2 / 2 * L with rho = V = 1
  return {lift / q, drag / q};
}

ForceCoefficients compute_forces(const CartesianMesh& mesh, const FlowField& U, const ImmersedBody& body,
                                 double l_ref, double alpha_deg) {
  if (body.solid_points.empty()) throw std::invalid_argument("compute_forces: mask has no solid points");
  if (!body.pen.enabled()) return {};
  const std::size_t np = U.points_per_element();
  double fx = 0.0, fy = 0.0;
  for (const auto pt : body.solid_points) {
    const State s = mask::penalize_ns(U.state(pt), true, body.pen);
    const double w = mesh.weight(static_cast<int>(pt / np), static_cast<int>(pt % np));
    fx -= w * s[1];
    fy -= w * s[2];
  }
  return to_coefficients(fx, fy, l_ref, alpha_deg);
}

ForceCoefficients impulse_forces(const StepImpulse& impulse, double dt, double l_ref, double alpha_deg) {
  if (!(dt > 0.0)) throw std::invalid_argument("impulse_forces: dt must be positive");
  return to_coefficients(-impulse.fx / dt, -impulse.fy / dt, l_ref, alpha_deg);
}

ControlVolumeForce::ControlVolumeForce(const CartesianMesh& mesh, int i0, int i1, int j0, int j1)
    : mesh_(&mesh), i0_(i0), i1_(i1), j0_(j0), j1_(j1) {
  if (i0 < 0 || j0 < 0 || i1 > mesh.nx() || j1 > mesh.ny() || i0 >= i1 || j0 >= j1) {
    throw std::invalid_argument("ControlVolumeForce: invalid element block");
  }
}

ControlVolumeForce ControlVolumeForce::around(const CartesianMesh& mesh, double x0, double x1, double y0, double y1,
                                              int pad) {
  auto lo = [](const std::vector<double>& e, double v) {
    return static_cast<int>(std::upper_bound(e.begin(), e.end(), v) - e.begin()) - 1;
  };
  auto hi = [](const std::vector<double>& e, double v) {
    return static_cast<int>(std::lower_bound(e.begin(), e.end(), v) - e.begin());
  };
  const int i0 = std::max(0, lo(mesh.x_edges(), x0) - pad);
  const int i1 = std::min(mesh.nx(), hi(mesh.x_edges(), x1) + pad);
  const int j0 = std::max(0, lo(mesh.y_edges(), y0) - pad);
  const int j1 = std::min(mesh.ny(), hi(mesh.y_edges(), y1) + pad);
  return ControlVolumeForce(mesh, i0, i1, j0, j1);
}

std::array<double, 2> ControlVolumeForce::momentum(const FlowField& U) const {
  std::array<double, 2> m{0.0, 0.0};
  const int np = mesh_->points_per_element();
  for (int j = j0_; j < j1_; ++j) {
    for (int i = i0_; i < i1_; ++i) {
      const int e = mesh_->element(i, j);
      const double* mx = U.var_ptr(e, 1);
      const double* my = U.var_ptr(e, 2);
      for (int p = 0; p < np; ++p) {
        const double w = mesh_->weight(e, p);
        m[0] += w * mx[p];
        m[1] += w * my[p];
      }
    }
  }
  return m;
}

void ControlVolumeForce::begin(NavierStokes2D& solver, const FlowField& U) {
  m0_ = momentum(U);
  flux0_ = solver.boundary_momentum_flux(U, i0_, i1_, j0_, j1_);
}

std::array<double, 2> ControlVolumeForce::end(NavierStokes2D& solver, const FlowField& U, double dt) {
  const auto m1 = momentum(U);
  const auto flux1 = solver.boundary_momentum_flux(U, i0_, i1_, j0_, j1_);
  std::array<double, 2> f;
  for (int d = 0; d < 2; ++d) f[d] = -((m1[d] - m0_[d]) / dt + 0.5 * (flux0_[d] + flux1[d]));
  m0_ = m1;
  flux0_ = flux1;
  return f;
}

std::size_t Probe::flat() const {
  return static_cast<std::size_t>(element) * static_cast<std::size_t>(points_per_element) +
         static_cast<std::size_t>(point);
}

Probe locate_probe(const CartesianMesh& mesh, double x, double y) {
  const auto& xe = mesh.x_edges();
  const auto& ye = mesh.y_edges();
  if (!(x >= xe.front() && x <= xe.back() && y >= ye.front() && y <= ye.back())) {
    throw std::out_of_range("probe (" + std::to_string(x) + ", " + std::to_string(y) + ") is outside the domain");
  }
  const int ic = std::clamp(static_cast<int>(std::upper_bound(xe.begin(), xe.end(), x) - xe.begin()) - 1, 0,
                            mesh.nx() - 1);
  const int jc = std::clamp(static_cast<int>(std::upper_bound(ye.begin(), ye.end(), y) - ye.begin()) - 1, 0,
                            mesh.ny() - 1);
  Probe pr;
  pr.x = x;
  pr.y = y;
  pr.points_per_element = mesh.points_per_element();
  double best = INFINITY;
  for (int j = std::max(0, jc - 1); j <= std::min(mesh.ny() - 1, jc + 1); ++j) {
    for (int i = std::max(0, ic - 1); i <= std::min(mesh.nx() - 1, ic + 1); ++i) {
      const int e = mesh.element(i, j);
      for (int p = 0; p < mesh.points_per_element(); ++p) {
        const double dx = mesh.x(e, p) - x;
        const double dy = mesh.y(e, p) - y;
        const double d2 = dx * dx + dy * dy;
        if (d2 < best) {
          best = d2;
          pr.element = e;
          pr.point = p;
          pr.snapped_x = mesh.x(e, p);
          pr.snapped_y = mesh.y(e, p);
        }
      }
    }
  }
  return pr;
}

std::array<double, 2> probe_sample(const FlowField& U, const Probe& probe) {
  const double rho = U.at(static_cast<std::size_t>(probe.element), 0, static_cast<std::size_t>(probe.point));
  return {U.at(probe.element, 1, probe.point) / rho, U.at(probe.element, 2, probe.point) / rho};
}

std::vector<SurfacePoint> surface_pressure(const CartesianMesh& mesh, const FlowField& U,
                                           const mask::MaskField& mask, const GasModel& gas) {
  if (mask.values.size() != mesh.n_points()) throw std::invalid_argument("surface_pressure: mask size mismatch");
  const int q = mesh.q();
  const int np = mesh.points_per_element();
  const double p_inf = gas.p_inf();
  std::vector<SurfacePoint> out;
  std::vector<std::size_t> column;
  column.reserve(static_cast<std::size_t>(mesh.ny()) * q);
  for (int i = 0; i < mesh.nx(); ++i) {
    for (int a = 0; a < q; ++a) {
      column.clear();
      for (int j = 0; j < mesh.ny(); ++j) {
        const std::size_t base = static_cast<std::size_t>(mesh.element(i, j)) * np;
        for (int b = 0; b < q; ++b) column.push_back(base + static_cast<std::size_t>(b * q + a));
      }
      int lo = -1, hi = -1;
      for (int k = 0; k < static_cast<int>(column.size()); ++k) {
        if (mask.values[column[k]]) {
          if (lo < 0) lo = k;
          hi = k;
        }
      }
      if (lo < 0) continue;
      auto sample = [&](std::size_t pt, bool upper) {
        const int e = static_cast<int>(pt / np), p = static_cast<int>(pt % np);
        out.push_back({mesh.x(e, p), mesh.y(e, p), upper, 2.0 * (gas.pressure(U.state(pt)) - p_inf)});
      };
      if (hi + 1 < static_cast<int>(column.size())) sample(column[hi + 1], true);
      if (lo > 0) sample(column[lo - 1], false);
    }
  }
  return out;
}

SeriesStats series_stats(std::span<const double> series, double trim) {
  if (!(trim >= 0.0 && trim < 1.0)) throw std::invalid_argument("series_stats: trim must be in [0, 1)");
  const auto start = static_cast<std::size_t>(std::floor(trim * static_cast<double>(series.size())));
  const auto tail = series.subspan(start);
  if (tail.empty()) throw std::invalid_argument("series_stats: empty series");
  SeriesStats s;
  double mn = tail[0], mx = tail[0];
  for (double v : tail) {
    s.mean += v;
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  s.mean /= static_cast<double>(tail.size());
  for (double v : tail) s.rms += (v - s.mean) * (v - s.mean);
  s.rms = std::sqrt(s.rms / static_cast<double>(tail.size()));
  s.amplitude = 0.5 * (mx - mn);
  return s;
}

double strouhal(std::span<const double> series, double dt, double d_ref, double v_ref, double trim) {
  if (!(dt > 0.0) || !(d_ref > 0.0) || !(v_ref > 0.0)) {
    throw std::invalid_argument("strouhal: dt, reference length and velocity must be positive");
  }
  const auto start = static_cast<std::size_t>(std::floor(trim * static_cast<double>(series.size())));
  const auto tail = series.subspan(start);
  const std::size_t n = tail.size();
  if (n < 16) throw std::invalid_argument("strouhal: need at least 16 samples after trimming");

  double mean = 0.0;
  for (double v : tail) mean += v;
  mean /= static_cast<double>(n);
  std::size_t nfft = 1;
  while (nfft < 8 * n) nfft <<= 1;
  std::vector<double> in(nfft, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n - 1));
    in[i] = w * (tail[i] - mean);
  }
  const std::size_t nbins = nfft / 2 + 1;
  auto* spec = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * nbins));
  fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(nfft), in.data(), spec, FFTW_ESTIMATE);
  fftw_execute(plan);
  std::vector<double> mag(nbins);
  for (std::size_t k = 0; k < nbins; ++k) mag[k] = std::hypot(spec[k][0], spec[k][1]);
  fftw_destroy_plan(plan);
  fftw_free(spec);

  std::size_t peak = 1;
  for (std::size_t k = 2; k + 1 < nbins; ++k) {
    if (mag[k] > mag[peak]) peak = k;
  }
  std::vector<double> sorted(mag.begin() + 1, mag.end());
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];
  if (!(mag[peak] > 10.0 * median) || mag[peak] == 0.0 || peak + 1 >= nbins) {
    throw std::runtime_error("strouhal: no dominant peak above the noise floor");
  }
  const double a = std::log(mag[peak - 1] + 1e-300);
  const double b = std::log(mag[peak]);
  const double c = std::log(mag[peak + 1] + 1e-300);
  const double denom = a - 2.0 * b + c;
  const double delta = denom != 0.0 ? 0.5 * (a - c) / denom : 0.0;
  const double f = (static_cast<double>(peak) + delta) / (static_cast<double>(nfft) * dt);
  return f * d_ref / v_ref;
}

}  // namespace penalfr::ns
