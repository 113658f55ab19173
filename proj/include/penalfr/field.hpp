// Storage for the 2D conserved variables at tensor-product solution points.
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace penalfr {

inline constexpr int kNumVars = 4;  // rho, rho u, rho v, E

using State = std::array<double, kNumVars>;

/// Conserved variables laid out element-major: data[(e * 4 + var) * np + p].
/// The flat point index used across the library is e * np + p, so iterating
/// flat points visits elements in order and points within each element in
/// order.
class FlowField {
 public:
  FlowField() = default;
  FlowField(std::size_t n_elements, std::size_t points_per_element)
      : n_elements_(n_elements), np_(points_per_element), data_(n_elements * kNumVars * points_per_element, 0.0) {}

  std::size_t n_elements() const { return n_elements_; }
  std::size_t points_per_element() const { return np_; }
  std::size_t n_points() const { return n_elements_ * np_; }

  double& at(std::size_t e, int var, std::size_t p) { return data_[(e * kNumVars + var) * np_ + p]; }
  double at(std::size_t e, int var, std::size_t p) const { return data_[(e * kNumVars + var) * np_ + p]; }

  double& at(std::size_t point, int var) { return at(point / np_, var, point % np_); }
  double at(std::size_t point, int var) const { return at(point / np_, var, point % np_); }

  State state(std::size_t point) const {
    const std::size_t e = point / np_;
    const std::size_t p = point % np_;
    return {at(e, 0, p), at(e, 1, p), at(e, 2, p), at(e, 3, p)};
  }
  void set_state(std::size_t point, const State& s) {
    const std::size_t e = point / np_;
    const std::size_t p = point % np_;
    for (int v = 0; v < kNumVars; ++v) at(e, v, p) = s[v];
  }

  /// Contiguous block of one variable for element e.
  double* var_ptr(std::size_t e, int var) { return data_.data() + (e * kNumVars + var) * np_; }
  const double* var_ptr(std::size_t e, int var) const { return data_.data() + (e * kNumVars + var) * np_; }

  std::span<double> raw() { return data_; }
  std::span<const double> raw() const { return data_; }

  friend bool operator==(const FlowField&, const FlowField&) = default;

 private:
  std::size_t n_elements_ = 0;
  std::size_t np_ = 0;
  std::vector<double> data_;
};

}  // namespace penalfr
