#pragma once

#include <Eigen/Dense>

#include <memory>
#include <vector>

#include "kslift/polynomial.hpp"

namespace kslift {

/// Value, gradient and Hessian of a field at a point.
struct Jet {
  double value = 0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;

  explicit Jet(int dim)
      : grad(Eigen::VectorXd::Zero(dim)),
        hess(Eigen::MatrixXd::Zero(dim, dim)) {}

  int dim() const { return static_cast<int>(grad.size()); }
  double laplacian(int start, int len) const {
    return hess.diagonal().segment(start, len).sum();
  }
};

/// An evaluable scalar field on R^d built from polynomials, block norms,
/// exponentials, powers, sums and products. Every node supports analytic
/// first and second derivatives away from the zeros of the norms it
/// contains; fourth-order finite differences are available as an
/// independent route.
class ScalarField {
 public:
  enum class Op { constant, poly, norm, pow, exp, add, mul };

  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    Op op;
    int dim = 0;
    double scalar = 0;                     // constant value / pow exponent
    std::shared_ptr<const ExactPolynomial> poly;  // op == poly
    int start = 0, len = 0;                // op == norm: block
    int diff_start = -1;                   // op == norm: subtracted block
    std::vector<NodePtr> children;
  };

  ScalarField() = default;

  int dim() const { return node_->dim; }
  const NodePtr& node() const { return node_; }
  bool analytic_derivatives() const { return true; }

  double value(const Eigen::VectorXd& point) const;
  Jet jet(const Eigen::VectorXd& point) const;

  static ScalarField constant(int dim, double value);
  static ScalarField poly(ExactPolynomial p);
  /// |x[start .. start+len)|.
  static ScalarField norm(int dim, int start = 0, int len = -1);
  /// |x[start_a .. ) - x[start_b .. )| over blocks of length len.
  static ScalarField norm_diff(int dim, int start_a, int start_b, int len);
  static ScalarField pow(ScalarField base, double exponent);
  static ScalarField exp(ScalarField arg);
  static ScalarField sum(std::vector<ScalarField> terms);
  static ScalarField product(std::vector<ScalarField> factors);
  static ScalarField scale(double factor, ScalarField f);

  friend ScalarField operator+(ScalarField a, ScalarField b) {
    return sum({std::move(a), std::move(b)});
  }
  friend ScalarField operator*(ScalarField a, ScalarField b) {
    return product({std::move(a), std::move(b)});
  }

  static ScalarField from_node(NodePtr node) { return ScalarField(std::move(node)); }

 private:
  explicit ScalarField(NodePtr node) : node_(std::move(node)) {}
  NodePtr node_;
};

/// 4th-order central second derivative of f in coordinate i, with one
/// Richardson extrapolation level. h defaults to 1e-3 (1 + |point|).
double fd_second_derivative(const ScalarField& f, const Eigen::VectorXd& point,
                            int i, double h = 0);

double fd_block_laplacian(const ScalarField& f, const Eigen::VectorXd& point,
                          int start, int len, double h = 0);

/// Same stencil without Richardson, for observing the convergence order.
double fd_second_derivative_plain(const ScalarField& f,
                                  const Eigen::VectorXd& point, int i,
                                  double h);

/// x -> e^{-beta |x|} P(x) on R^3; for beta = 0 the polynomial itself.
ScalarField hydrogenic_field(double beta, const ExactPolynomial& p);

}  // namespace kslift
