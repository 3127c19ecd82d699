#include "kslift/scalar_field.hpp"

#include <cmath>

namespace kslift {

namespace {

using Node = ScalarField::Node;
using NodePtr = ScalarField::NodePtr;
using Op = ScalarField::Op;

double block_norm(const Node& n, const Eigen::VectorXd& x,
                  Eigen::VectorXd* direction = nullptr) {
  Eigen::VectorXd z = x.segment(n.start, n.len);
  if (n.diff_start >= 0) z -= x.segment(n.diff_start, n.len);
  double s = z.norm();
  if (direction) *direction = z;
  return s;
}

double powi(double base, int e) {
  double acc = 1.0;
  double b = base;
  int k = std::abs(e);
  while (k > 0) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return e < 0 ? 1.0 / acc : acc;
}

// base^expo together with the first two scalar derivatives, handling
// integer exponents at base <= 0.
void pow_with_derivs(double base, double expo, double& v, double& d1,
                     double& d2) {
  double rounded = std::round(expo);
  if (rounded == expo && std::abs(expo) < 1e9) {
    int e = static_cast<int>(rounded);
    require(base != 0 || e >= 0, ErrorCode::evaluation_domain,
            "negative power of zero");
    v = powi(base, e);
    d1 = e == 0 ? 0.0 : e * powi(base, e - 1);
    d2 = (e == 0 || e == 1) ? 0.0 : e * (e - 1.0) * powi(base, e - 2);
    return;
  }
  require(base > 0, ErrorCode::evaluation_domain,
          "non-integer power of a non-positive value");
  v = std::pow(base, expo);
  d1 = expo * std::pow(base, expo - 1.0);
  d2 = expo * (expo - 1.0) * std::pow(base, expo - 2.0);
}

double eval_node(const Node& n, const Eigen::VectorXd& x) {
  switch (n.op) {
    case Op::constant:
      return n.scalar;
    case Op::poly: {
      std::vector<double> p(x.data(), x.data() + x.size());
      return n.poly->evaluate<double>(p);
    }
    case Op::norm:
      return block_norm(n, x);
    case Op::pow: {
      double v, d1, d2;
      pow_with_derivs(eval_node(*n.children[0], x), n.scalar, v, d1, d2);
      return v;
    }
    case Op::exp:
      return std::exp(eval_node(*n.children[0], x));
    case Op::add: {
      double s = 0;
      for (const auto& c : n.children) s += eval_node(*c, x);
      return s;
    }
    case Op::mul: {
      double s = 1;
      for (const auto& c : n.children) s *= eval_node(*c, x);
      return s;
    }
  }
  throw Error(ErrorCode::internal_error, "unreachable field op");
}

// Chain rule for a scalar function g(u): value g, d1 = g', d2 = g''.
Jet compose_scalar(const Jet& u, double g, double d1, double d2) {
  Jet out(u.dim());
  out.value = g;
  out.grad = d1 * u.grad;
  out.hess = d1 * u.hess + d2 * (u.grad * u.grad.transpose());
  return out;
}

Jet jet_node(const Node& n, const Eigen::VectorXd& x) {
  int d = n.dim;
  switch (n.op) {
    case Op::constant: {
      Jet out(d);
      out.value = n.scalar;
      return out;
    }
    case Op::poly: {
      Jet out(d);
      std::vector<double> p(x.data(), x.data() + x.size());
      out.value = n.poly->evaluate<double>(p);
      for (int i = 0; i < d; ++i) {
        ExactPolynomial di = derivative(*n.poly, i);
        out.grad[i] = di.evaluate<double>(p);
        for (int j = i; j < d; ++j) {
          double v = derivative(di, j).evaluate<double>(p);
          out.hess(i, j) = v;
          out.hess(j, i) = v;
        }
      }
      return out;
    }
    case Op::norm: {
      Eigen::VectorXd z;
      double s = block_norm(n, x, &z);
      require(s > 1e-300, ErrorCode::evaluation_domain,
              "norm derivative at the singular point");
      Jet out(d);
      out.value = s;
      // d|z|/dz = z/s, d^2|z|/dz^2 = (I - z z^T / s^2) / s, mapped onto
      // the block coordinates (with signs for a difference of blocks).
      Eigen::VectorXd dz = z / s;
      Eigen::MatrixXd hz =
          (Eigen::MatrixXd::Identity(n.len, n.len) - dz * dz.transpose()) / s;
      for (int i = 0; i < n.len; ++i) {
        out.grad[n.start + i] += dz[i];
        if (n.diff_start >= 0) out.grad[n.diff_start + i] -= dz[i];
      }
      auto add_block = [&](int ri, int ci, double sign) {
        for (int i = 0; i < n.len; ++i)
          for (int j = 0; j < n.len; ++j)
            out.hess(ri + i, ci + j) += sign * hz(i, j);
      };
      add_block(n.start, n.start, 1.0);
      if (n.diff_start >= 0) {
        add_block(n.diff_start, n.diff_start, 1.0);
        add_block(n.start, n.diff_start, -1.0);
        add_block(n.diff_start, n.start, -1.0);
      }
      return out;
    }
    case Op::pow: {
      Jet u = jet_node(*n.children[0], x);
      double v, d1, d2;
      pow_with_derivs(u.value, n.scalar, v, d1, d2);
      return compose_scalar(u, v, d1, d2);
    }
    case Op::exp: {
      Jet u = jet_node(*n.children[0], x);
      double v = std::exp(u.value);
      return compose_scalar(u, v, v, v);
    }
    case Op::add: {
      Jet out(d);
      for (const auto& c : n.children) {
        Jet u = jet_node(*c, x);
        out.value += u.value;
        out.grad += u.grad;
        out.hess += u.hess;
      }
      return out;
    }
    case Op::mul: {
      Jet out(d);
      out.value = 1.0;
      for (const auto& c : n.children) {
        Jet u = jet_node(*c, x);
        Eigen::MatrixXd hess = out.value * u.hess + u.value * out.hess +
                               out.grad * u.grad.transpose() +
                               u.grad * out.grad.transpose();
        out.grad = out.value * u.grad + u.value * out.grad;
        out.hess = std::move(hess);
        out.value *= u.value;
      }
      return out;
    }
  }
  throw Error(ErrorCode::internal_error, "unreachable field op");
}

NodePtr make_node(Node n) { return std::make_shared<const Node>(std::move(n)); }

}  // namespace

double ScalarField::value(const Eigen::VectorXd& point) const {
  require(node_ != nullptr, ErrorCode::invalid_input, "empty scalar field");
  require(static_cast<int>(point.size()) == node_->dim,
          ErrorCode::dimension_mismatch, "evaluation point has wrong dimension");
  return eval_node(*node_, point);
}

Jet ScalarField::jet(const Eigen::VectorXd& point) const {
  require(node_ != nullptr, ErrorCode::invalid_input, "empty scalar field");
  require(static_cast<int>(point.size()) == node_->dim,
          ErrorCode::dimension_mismatch, "evaluation point has wrong dimension");
  return jet_node(*node_, point);
}

ScalarField ScalarField::constant(int dim, double value) {
  Node n;
  n.op = Op::constant;
  n.dim = dim;
  n.scalar = value;
  return ScalarField(make_node(std::move(n)));
}

ScalarField ScalarField::poly(ExactPolynomial p) {
  Node n;
  n.op = Op::poly;
  n.dim = p.dim();
  n.poly = std::make_shared<const ExactPolynomial>(std::move(p));
  return ScalarField(make_node(std::move(n)));
}

ScalarField ScalarField::norm(int dim, int start, int len) {
  if (len < 0) len = dim - start;
  require(start >= 0 && len >= 1 && start + len <= dim,
          ErrorCode::invalid_input, "norm block out of range");
  Node n;
  n.op = Op::norm;
  n.dim = dim;
  n.start = start;
  n.len = len;
  return ScalarField(make_node(std::move(n)));
}

ScalarField ScalarField::norm_diff(int dim, int start_a, int start_b,
                                   int len) {
  require(start_a >= 0 && start_b >= 0 && len >= 1 && start_a + len <= dim &&
              start_b + len <= dim,
          ErrorCode::invalid_input, "norm blocks out of range");
  Node n;
  n.op = Op::norm;
  n.dim = dim;
  n.start = start_a;
  n.len = len;
  n.diff_start = start_b;
  return ScalarField(make_node(std::move(n)));
}

ScalarField ScalarField::pow(ScalarField base, double exponent) {
  Node n;
  n.op = Op::pow;
  n.dim = base.dim();
  n.scalar = exponent;
  n.children = {base.node_};
  return ScalarField(make_node(std::move(n)));
}

ScalarField ScalarField::exp(ScalarField arg) {
  Node n;
  n.op = Op::exp;
  n.dim = arg.dim();
  n.children = {arg.node_};
  return ScalarField(make_node(std::move(n)));
}

ScalarField ScalarField::sum(std::vector<ScalarField> terms) {
  require(!terms.empty(), ErrorCode::invalid_input, "empty sum");
  Node n;
  n.op = Op::add;
  n.dim = terms.front().dim();
  for (const auto& t : terms) {
    require(t.dim() == n.dim, ErrorCode::dimension_mismatch,
            "sum terms live on different spaces");
    n.children.push_back(t.node_);
  }
  return ScalarField(make_node(std::move(n)));
}

ScalarField ScalarField::product(std::vector<ScalarField> factors) {
  require(!factors.empty(), ErrorCode::invalid_input, "empty product");
  Node n;
  n.op = Op::mul;
  n.dim = factors.front().dim();
  for (const auto& f : factors) {
    require(f.dim() == n.dim, ErrorCode::dimension_mismatch,
            "product factors live on different spaces");
    n.children.push_back(f.node_);
  }
  return ScalarField(make_node(std::move(n)));
}

ScalarField ScalarField::scale(double factor, ScalarField f) {
  return product({constant(f.dim(), factor), std::move(f)});
}

double fd_second_derivative_plain(const ScalarField& f,
                                  const Eigen::VectorXd& point, int i,
                                  double h) {
  Eigen::VectorXd p = point;
  auto at = [&](double offset) {
    p[i] = point[i] + offset;
    double v = f.value(p);
    p[i] = point[i];
    return v;
  };
  return (-at(2 * h) + 16 * at(h) - 30 * at(0) + 16 * at(-h) - at(-2 * h)) /
         (12 * h * h);
}

double fd_second_derivative(const ScalarField& f, const Eigen::VectorXd& point,
                            int i, double h) {
  if (h <= 0) h = 1e-3 * (1.0 + point.norm());
  double coarse = fd_second_derivative_plain(f, point, i, h);
  double fine = fd_second_derivative_plain(f, point, i, 0.5 * h);
  return (16.0 * fine - coarse) / 15.0;
}

double fd_block_laplacian(const ScalarField& f, const Eigen::VectorXd& point,
                          int start, int len, double h) {
  double s = 0;
  for (int i = start; i < start + len; ++i)
    s += fd_second_derivative(f, point, i, h);
  return s;
}

ScalarField hydrogenic_field(double beta, const ExactPolynomial& p) {
  require(p.dim() == 3, ErrorCode::dimension_mismatch,
          "hydrogenic field expects a polynomial on R^3");
  if (beta == 0) return ScalarField::poly(p);
  ScalarField decay =
      ScalarField::exp(ScalarField::scale(-beta, ScalarField::norm(3)));
  return decay * ScalarField::poly(p);
}

}  // namespace kslift
