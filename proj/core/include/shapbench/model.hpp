#pragma once

#include <Eigen/Dense>

namespace shapbench {

// A real-valued function of a fixed-size input vector with analytic first and
// second input derivatives. Implementations must be immutable after
// construction; concurrent read-only use from many workers is safe.
class DifferentiableModel {
 public:
  virtual ~DifferentiableModel() = default;

  virtual int input_dim() const = 0;

  // Head-reduced scalar value f(x).
  virtual double forward(const Eigen::VectorXd& x) const = 0;

  // Gradient of f with respect to the input, length input_dim.
  virtual Eigen::VectorXd input_gradient(const Eigen::VectorXd& x) const = 0;

  // Full input Hessian H with H(i, j) = d^2 f / dx_i dx_j.
  virtual Eigen::MatrixXd input_cross_hessian(
      const Eigen::VectorXd& x) const = 0;
};

}  // namespace shapbench
