#include "penalfr/fr_core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace penalfr::fr {

LegendreValue legendre(int n, double x) {
  if (n < 0) throw std::invalid_argument("legendre: negative degree");
  if (n == 0) return {1.0, 0.0};
  double p_prev = 1.0;
  double p = x;
  double dp_prev = 0.0;
  double dp = 1.0;
  for (int k = 1; k < n; ++k) {
    const double p_next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
    // P'_{k+1} = P'_{k-1} + (2k+1) P_k
    const double dp_next = dp_prev + (2.0 * k + 1.0) * p;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
  }
  return {p, dp};
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Tricomi initial guess, refined by Newton on P_n.
    double x = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double dp = legendre(n, x).derivative;
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  // Symmetrise so that mirrored nodes are bitwise opposite.
  for (int i = 0; i < n / 2; ++i) {
    const double a = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    rule.nodes[i] = -a;
    rule.nodes[n - 1 - i] = a;
    const double w = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

NodalBasis::NodalBasis(int order) : order_(order) {
  if (order < 0) throw std::invalid_argument("NodalBasis: order must be non-negative");
  const int n = order + 1;
  auto rule = gauss_legendre(n);
  nodes_ = std::move(rule.nodes);
  weights_ = std::move(rule.weights);

  bary_.assign(n, 1.0);
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      if (m != j) bary_[j] *= nodes_[j] - nodes_[m];
    }
    bary_[j] = 1.0 / bary_[j];
  }

  diff_ = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      diff_(i, j) = (bary_[j] / bary_[i]) / (nodes_[i] - nodes_[j]);
      diag -= diff_(i, j);
    }
    diff_(i, i) = diag;
  }
  left_ = evaluate(-1.0);
  right_ = evaluate(1.0);
}

Eigen::RowVectorXd NodalBasis::evaluate(double r) const {
  const int n = size();
  Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    if (r == nodes_[j]) {
      out(j) = 1.0;
      return out;
    }
  }
  double denom = 0.0;
  for (int j = 0; j < n; ++j) {
    out(j) = bary_[j] / (r - nodes_[j]);
    denom += out(j);
  }
  return out / denom;
}

NodalBasis build_nodal_basis(int order) { return NodalBasis(order); }

namespace {

// Right Radau polynomial of degree k: 1 at r = -1, 0 at r = +1.
LegendreValue right_radau(int k, double r) {
  const auto a = legendre(k, r);
  const auto b = legendre(k - 1, r);
  const double sign = (k % 2 == 0) ? 0.5 : -0.5;
  return {sign * (a.value - b.value), sign * (a.derivative - b.derivative)};
}

// Left Radau polynomial of degree k: 0 at r = -1, 1 at r = +1.
LegendreValue left_radau(int k, double r) {
  const auto a = legendre(k, r);
  const auto b = legendre(k - 1, r);
  return {0.5 * (a.value + b.value), 0.5 * (a.derivative + b.derivative)};
}

}  // namespace

double correction_left(int order, double r, CorrectionFamily) {
  return right_radau(order + 1, r).value;
}

double correction_right(int order, double r, CorrectionFamily) {
  return left_radau(order + 1, r).value;
}

CorrectionGradients build_correction_gradients(const NodalBasis& basis, CorrectionFamily) {
  const int n = basis.size();
  CorrectionGradients g{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (int i = 0; i < n; ++i) {
    const double r = basis.nodes()[i];
    g.left(i) = right_radau(basis.order() + 1, r).derivative;
    g.right(i) = left_radau(basis.order() + 1, r).derivative;
  }
  return g;
}

CorrectionGradients build_correction_gradients(int order, CorrectionFamily family) {
  return build_correction_gradients(NodalBasis(order), family);
}

ElementOperators build_element_operators(const NodalBasis& basis, const CorrectionGradients& corr,
                                         double h, double c, double lambda) {
  if (!(h > 0.0)) throw std::invalid_argument("build_element_operators: element width must be positive");
  const double up = c + lambda * std::abs(c);
  const double down = c - lambda * std::abs(c);
  const auto& lm = basis.interp_left();
  const auto& lp = basis.interp_right();

  ElementOperators ops;
  ops.h = h;
  ops.c = c;
  ops.lambda = lambda;
  ops.L = -(1.0 / h) * up * (corr.left * lp);
  ops.C = -(2.0 / h) * (c * basis.diff_matrix() - 0.5 * up * (corr.left * lm) -
                        0.5 * down * (corr.right * lp));
  ops.R = -(1.0 / h) * down * (corr.right * lm);
  return ops;
}

}  // namespace penalfr::fr
