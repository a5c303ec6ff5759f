#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "shapbench/model.hpp"

namespace shapbench {

enum class Activation { kIdentity, kRelu, kTanh, kSigmoid };

const char* activation_name(Activation a);
// Throws a parse error for unknown names.
Activation activation_from_name(const std::string& name);

// Subgradient convention: relu'(0) = 0 and relu'' = 0 everywhere, so results
// through relu layers are deterministic at the kink.
double activation_value(Activation a, double z);
double activation_d1(Activation a, double z);
double activation_d2(Activation a, double z);

// How the final layer's activations are reduced to the explained scalar.
// kLogitDiff takes output[1] - output[0] of a two-unit final layer.
enum class Head { kScalar, kLogitDiff };

const char* head_name(Head h);
Head head_from_name(const std::string& name);

struct Layer {
  Eigen::MatrixXd weight;  // rows are output-indexed
  Eigen::VectorXd bias;
  Activation activation = Activation::kIdentity;
};

// Feed-forward network with a scalar value head. Immutable in practice: all
// evaluation entry points are const and thread-safe.
class MlpModel : public DifferentiableModel {
 public:
  MlpModel(int input_dim, Head head, std::vector<Layer> layers);

  int input_dim() const override { return input_dim_; }
  Head head() const { return head_; }
  const std::vector<Layer>& layers() const { return layers_; }

  double forward(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd input_gradient(const Eigen::VectorXd& x) const override;
  Eigen::MatrixXd input_cross_hessian(const Eigen::VectorXd& x) const override;

  // Raw final-layer activations, before head reduction.
  Eigen::VectorXd raw_output(const Eigen::VectorXd& x) const;

  int output_dim() const { return static_cast<int>(layers_.back().bias.size()); }

 private:
  void check_input(const Eigen::VectorXd& x) const;
  Eigen::VectorXd head_gradient() const;

  int input_dim_;
  Head head_;
  std::vector<Layer> layers_;
};

}  // namespace shapbench
