// One-dimensional flux reconstruction building blocks: Gauss-Legendre nodal
// basis, DG-recovering correction functions and the per-element advection
// operators (left / centre / right coupling blocks).
#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace penalfr::fr {

/// Recommended upper bound on the polynomial order. Higher orders work but the
/// node computation and the operators lose a few digits.
inline constexpr int kPracticalMaxOrder = 10;

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
GaussRule gauss_legendre(int n);

/// Legendre polynomial P_n(x) and its derivative.
struct LegendreValue {
  double value;
  double derivative;
};
LegendreValue legendre(int n, double x);

/// Lagrange basis of order P on the P+1 Gauss points.
///
/// Holds the differentiation matrix D(i, j) = l_j'(r_i) and the boundary
/// interpolation rows l(-1), l(+1). Evaluation uses the barycentric form.
class NodalBasis {
 public:
  explicit NodalBasis(int order);

  int order() const { return order_; }
  int size() const { return order_ + 1; }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> barycentric_weights() const { return bary_; }
  const Eigen::MatrixXd& diff_matrix() const { return diff_; }
  const Eigen::RowVectorXd& interp_left() const { return left_; }
  const Eigen::RowVectorXd& interp_right() const { return right_; }

  /// Values of all basis functions at reference coordinate r.
  Eigen::RowVectorXd evaluate(double r) const;

 private:
  int order_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> bary_;
  Eigen::MatrixXd diff_;
  Eigen::RowVectorXd left_;
  Eigen::RowVectorXd right_;
};

NodalBasis build_nodal_basis(int order);

/// Correction-function family. Only the DG-recovering (Radau) member is
/// provided; the enum keeps the call sites explicit about the choice.
enum class CorrectionFamily { dg_radau };

/// dg^L/dr and dg^R/dr sampled at the solution points. g^L is 1 at r = -1 and
/// 0 at r = +1; g^R is the mirror image.
struct CorrectionGradients {
  Eigen::VectorXd left;
  Eigen::VectorXd right;
};

/// Correction function values g^L(r), g^R(r) (not gradients).
double correction_left(int order, double r, CorrectionFamily family = CorrectionFamily::dg_radau);
double correction_right(int order, double r, CorrectionFamily family = CorrectionFamily::dg_radau);

CorrectionGradients build_correction_gradients(const NodalBasis& basis,
                                               CorrectionFamily family = CorrectionFamily::dg_radau);
CorrectionGradients build_correction_gradients(int order,
                                               CorrectionFamily family = CorrectionFamily::dg_radau);

/// du_n/dt = L u_{n-1} + C u_n + R u_{n+1} for u_t + c u_x = 0 with a
/// Lax-Friedrichs type interface flux (lambda = 1 is fully upwind).
struct ElementOperators {
  Eigen::MatrixXd L;
  Eigen::MatrixXd C;
  Eigen::MatrixXd R;
  double h = 0.0;
  double c = 0.0;
  double lambda = 0.0;
  int order() const { return static_cast<int>(C.rows()) - 1; }
};

/// Throws std::invalid_argument for h <= 0.
ElementOperators build_element_operators(const NodalBasis& basis, const CorrectionGradients& corr,
                                         double h, double c, double lambda);

}  // namespace penalfr::fr
