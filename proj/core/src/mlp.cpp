#include "shapbench/mlp.hpp"

#include <cmath>
#include <string>

#include "shapbench/errors.hpp"

namespace shapbench {

const char* activation_name(Activation a) {
  switch (a) {
    case Activation::kIdentity: return "identity";
    case Activation::kRelu: return "relu";
    case Activation::kTanh: return "tanh";
    case Activation::kSigmoid: return "sigmoid";
  }
  return "?";
}

Activation activation_from_name(const std::string& name) {
  if (name == "identity") return Activation::kIdentity;
  if (name == "relu") return Activation::kRelu;
  if (name == "tanh") return Activation::kTanh;
  if (name == "sigmoid") return Activation::kSigmoid;
  throw_error(ErrorKind::kParse, "unknown activation: \"" + name + "\"");
}

double activation_value(Activation a, double z) {
  switch (a) {
    case Activation::kIdentity: return z;
    case Activation::kRelu: return z > 0 ? z : 0.0;
    case Activation::kTanh: return std::tanh(z);
    case Activation::kSigmoid: return 1.0 / (1.0 + std::exp(-z));
  }
  return 0.0;
}

double activation_d1(Activation a, double z) {
  switch (a) {
    case Activation::kIdentity: return 1.0;
    case Activation::kRelu: return z > 0 ? 1.0 : 0.0;
    case Activation::kTanh: {
      const double t = std::tanh(z);
      return 1.0 - t * t;
    }
    case Activation::kSigmoid: {
      const double s = 1.0 / (1.0 + std::exp(-z));
      return s * (1.0 - s);
    }
  }
  return 0.0;
}

double activation_d2(Activation a, double z) {
  switch (a) {
    case Activation::kIdentity: return 0.0;
    case Activation::kRelu: return 0.0;
    case Activation::kTanh: {
      const double t = std::tanh(z);
      return -2.0 * t * (1.0 - t * t);
    }
    case Activation::kSigmoid: {
      const double s = 1.0 / (1.0 + std::exp(-z));
      return s * (1.0 - s) * (1.0 - 2.0 * s);
    }
  }
  return 0.0;
}

const char* head_name(Head h) {
  return h == Head::kScalar ? "scalar" : "logit_diff";
}

Head head_from_name(const std::string& name) {
  if (name == "scalar") return Head::kScalar;
  if (name == "logit_diff") return Head::kLogitDiff;
  throw_error(ErrorKind::kParse, "unknown head: \"" + name + "\"");
}

MlpModel::MlpModel(int input_dim, Head head, std::vector<Layer> layers)
    : input_dim_(input_dim), head_(head), layers_(std::move(layers)) {
  if (input_dim_ <= 0) {
    throw_error(ErrorKind::kValidation, "input_dim must be positive");
  }
  if (layers_.empty()) {
    throw_error(ErrorKind::kValidation, "model needs at least one layer");
  }
  Eigen::Index in = input_dim_;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const Layer& layer = layers_[k];
    if (layer.weight.cols() != in) {
      throw_error(ErrorKind::kValidation,
                  "layer " + std::to_string(k) + ": weight expects " +
                      std::to_string(in) + " inputs, has " +
                      std::to_string(layer.weight.cols()));
    }
    if (layer.bias.size() != layer.weight.rows()) {
      throw_error(ErrorKind::kValidation,
                  "layer " + std::to_string(k) + ": bias length " +
                      std::to_string(layer.bias.size()) +
                      " does not match output dim " +
                      std::to_string(layer.weight.rows()));
    }
    if (!layer.weight.allFinite() || !layer.bias.allFinite()) {
      throw_error(ErrorKind::kValidation,
                  "layer " + std::to_string(k) + ": non-finite parameter");
    }
    in = layer.weight.rows();
  }
  const Eigen::Index out = layers_.back().weight.rows();
  if (head_ == Head::kScalar && out != 1) {
    throw_error(ErrorKind::kValidation,
                "scalar head requires final output dim 1, got " +
                    std::to_string(out));
  }
  if (head_ == Head::kLogitDiff && out != 2) {
    throw_error(ErrorKind::kValidation,
                "logit_diff head requires final output dim 2, got " +
                    std::to_string(out));
  }
}

void MlpModel::check_input(const Eigen::VectorXd& x) const {
  if (x.size() != input_dim_) {
    throw_error(ErrorKind::kConfig,
                "input length " + std::to_string(x.size()) +
                    " does not match input_dim " + std::to_string(input_dim_));
  }
  if (!x.allFinite()) {
    throw_error(ErrorKind::kInput, "non-finite model input");
  }
}

Eigen::VectorXd MlpModel::head_gradient() const {
  if (head_ == Head::kScalar) {
    return Eigen::VectorXd::Ones(1);
  }
  Eigen::VectorXd g(2);
  g << -1.0, 1.0;
  return g;
}

Eigen::VectorXd MlpModel::raw_output(const Eigen::VectorXd& x) const {
  check_input(x);
  Eigen::VectorXd a = x;
  for (const Layer& layer : layers_) {
    Eigen::VectorXd z = layer.weight * a + layer.bias;
    a = z.unaryExpr(
        [&](double v) { return activation_value(layer.activation, v); });
  }
  return a;
}

double MlpModel::forward(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd out = raw_output(x);
  return head_ == Head::kScalar ? out(0) : out(1) - out(0);
}

Eigen::VectorXd MlpModel::input_gradient(const Eigen::VectorXd& x) const {
  check_input(x);
  // Forward pass keeping pre-activations.
  std::vector<Eigen::VectorXd> pre(layers_.size());
  Eigen::VectorXd a = x;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    pre[k] = layers_[k].weight * a + layers_[k].bias;
    a = pre[k].unaryExpr(
        [&](double v) { return activation_value(layers_[k].activation, v); });
  }
  // Reverse accumulation through the linear head.
  Eigen::VectorXd g = head_gradient();
  for (std::size_t k = layers_.size(); k-- > 0;) {
    const Eigen::VectorXd d1 = pre[k].unaryExpr(
        [&](double v) { return activation_d1(layers_[k].activation, v); });
    g = layers_[k].weight.transpose() * g.cwiseProduct(d1).eval();
  }
  return g;
}

// Single reverse pass propagating both the adjoint g_k = df/da_k and the
// second-order adjoint H_k = d^2 f / da_k^2 layer by layer:
//   through an activation a = act(z):
//     H_z = diag(act') H diag(act') + diag(g .* act'')
//   through a linear map z = W a + b:
//     H_{k-1} = W^T H_z W
// The head is linear, so the recursion starts with H = 0. One extraction per
// call; never falls back to repeated forward differences.
Eigen::MatrixXd MlpModel::input_cross_hessian(const Eigen::VectorXd& x) const {
  check_input(x);
  std::vector<Eigen::VectorXd> pre(layers_.size());
  Eigen::VectorXd a = x;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    pre[k] = layers_[k].weight * a + layers_[k].bias;
    a = pre[k].unaryExpr(
        [&](double v) { return activation_value(layers_[k].activation, v); });
  }

  Eigen::VectorXd g = head_gradient();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(g.size(), g.size());
  for (std::size_t k = layers_.size(); k-- > 0;) {
    const Layer& layer = layers_[k];
    const Eigen::VectorXd d1 = pre[k].unaryExpr(
        [&](double v) { return activation_d1(layer.activation, v); });
    const Eigen::VectorXd d2 = pre[k].unaryExpr(
        [&](double v) { return activation_d2(layer.activation, v); });

    Eigen::MatrixXd hz = d1.asDiagonal() * h * d1.asDiagonal();
    hz.diagonal() += g.cwiseProduct(d2);

    g = layer.weight.transpose() * g.cwiseProduct(d1).eval();
    h = layer.weight.transpose() * hz * layer.weight;
  }
  // Symmetric by construction up to rounding; symmetrize so callers can rely
  // on H(i, j) == H(j, i) exactly.
  return ((h + h.transpose()) / 2.0).eval();
}

}  // namespace shapbench
