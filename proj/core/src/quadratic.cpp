#include "shapbench/quadratic.hpp"

#include "shapbench/errors.hpp"

namespace shapbench {

QuadraticModel::QuadraticModel(Eigen::MatrixXd a, Eigen::VectorXd b, double c)
    : a_(std::move(a)), b_(std::move(b)), c_(c) {
  if (a_.rows() != a_.cols() || a_.rows() != b_.size()) {
    throw_error(ErrorKind::kValidation,
                "quadratic model: shape mismatch between A and b");
  }
  if (!a_.allFinite() || !b_.allFinite() || !std::isfinite(c_)) {
    throw_error(ErrorKind::kValidation, "quadratic model: non-finite parameter");
  }
}

double QuadraticModel::forward(const Eigen::VectorXd& x) const {
  if (x.size() != b_.size()) {
    throw_error(ErrorKind::kConfig, "quadratic model: input length mismatch");
  }
  return x.dot(a_ * x) + b_.dot(x) + c_;
}

Eigen::VectorXd QuadraticModel::input_gradient(const Eigen::VectorXd& x) const {
  return (a_ + a_.transpose()) * x + b_;
}

Eigen::MatrixXd QuadraticModel::input_cross_hessian(
    const Eigen::VectorXd& x) const {
  (void)x;  // constant curvature
  return a_ + a_.transpose();
}

}  // namespace shapbench
