#pragma once

#include <Eigen/Dense>

#include "shapbench/model.hpp"

namespace shapbench {

// Exact quadratic value head f(x) = x^T A x + b^T x + c. Second-order Taylor
// remainders vanish for this family, which makes the chain-rule identity and
// the curvature bound exactly checkable; it plugs in behind the same binding
// interface as the MLP.
class QuadraticModel : public DifferentiableModel {
 public:
  QuadraticModel(Eigen::MatrixXd a, Eigen::VectorXd b, double c);

  int input_dim() const override { return static_cast<int>(b_.size()); }
  double forward(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd input_gradient(const Eigen::VectorXd& x) const override;
  Eigen::MatrixXd input_cross_hessian(const Eigen::VectorXd& x) const override;

  const Eigen::MatrixXd& quad() const { return a_; }
  const Eigen::VectorXd& lin() const { return b_; }
  double constant() const { return c_; }

 private:
  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  double c_;
};

}  // namespace shapbench
