#include "shapbench/train.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "shapbench/errors.hpp"
#include "shapbench/rng.hpp"

namespace shapbench {

namespace {

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

struct AdamState {
  Eigen::MatrixXd mw, vw;
  Eigen::VectorXd mb, vb;
};

void check_config(const LabeledDataset& data, const TrainConfig& cfg) {
  if (data.inputs.rows() == 0) {
    throw_error(ErrorKind::kInput, "training dataset is empty");
  }
  if (data.labels.size() != data.inputs.rows()) {
    throw_error(ErrorKind::kInput, "label count does not match instance count");
  }
  if (cfg.learning_rate <= 0.0) {
    throw_error(ErrorKind::kArgument, "learning_rate must be positive");
  }
  if (cfg.epochs < 1) {
    throw_error(ErrorKind::kArgument, "epochs must be at least 1");
  }
  if (cfg.batch_size < 1) {
    throw_error(ErrorKind::kArgument, "batch_size must be at least 1");
  }
  if (cfg.loss == Loss::kCrossEntropy) {
    for (Eigen::Index r = 0; r < data.labels.size(); ++r) {
      if (data.labels(r) != 0.0 && data.labels(r) != 1.0) {
        throw_error(ErrorKind::kInput,
                    "cross-entropy training needs binary labels");
      }
    }
  }
}

// Loss value and gradient with respect to the raw final-layer activations.
double loss_and_output_grad(Loss loss, Head head, const Eigen::VectorXd& out,
                            double label, Eigen::VectorXd& grad) {
  grad.resize(out.size());
  if (loss == Loss::kCrossEntropy) {
    if (head == Head::kScalar) {
      const double p = 1.0 / (1.0 + std::exp(-out(0)));
      grad(0) = p - label;
      const double eps = 1e-12;
      return -(label * std::log(p + eps) + (1.0 - label) * std::log(1.0 - p + eps));
    }
    // Two-class softmax on (out0, out1); label indexes the class.
    const double mx = std::max(out(0), out(1));
    const double e0 = std::exp(out(0) - mx);
    const double e1 = std::exp(out(1) - mx);
    const double z = e0 + e1;
    const double p0 = e0 / z;
    const double p1 = e1 / z;
    grad(0) = p0 - (label == 0.0 ? 1.0 : 0.0);
    grad(1) = p1 - (label == 1.0 ? 1.0 : 0.0);
    return -std::log((label == 1.0 ? p1 : p0) + 1e-12);
  }
  // Squared error on the head value.
  const double value = head == Head::kScalar ? out(0) : out(1) - out(0);
  const double g = 2.0 * (value - label);
  if (head == Head::kScalar) {
    grad(0) = g;
  } else {
    grad(0) = -g;
    grad(1) = g;
  }
  const double err = value - label;
  return err * err;
}

}  // namespace

MlpModel train(const LabeledDataset& data, const ArchSpec& arch,
               const TrainConfig& cfg) {
  check_config(data, cfg);

  const int input_dim = static_cast<int>(data.inputs.cols());
  const int out_dim = arch.head == Head::kScalar ? 1 : 2;

  std::vector<int> dims;
  dims.push_back(input_dim);
  for (int h : arch.hidden) {
    if (h < 1) throw_error(ErrorKind::kArgument, "hidden layer dims must be >= 1");
    dims.push_back(h);
  }
  dims.push_back(out_dim);

  // Separate streams for init and epoch shuffles.
  Rng init_rng(mix_seed(cfg.seed, 0x696e6974));
  Rng shuffle_rng(mix_seed(cfg.seed, 0x73687566));

  std::vector<Layer> layers;
  std::vector<AdamState> adam;
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
    const int d_in = dims[k];
    const int d_out = dims[k + 1];
    Layer layer;
    layer.activation =
        k + 2 == dims.size() ? Activation::kIdentity : arch.activation;
    layer.weight.resize(d_out, d_in);
    layer.bias = Eigen::VectorXd::Zero(d_out);
    const double bound = 1.0 / std::sqrt(static_cast<double>(d_in));
    for (Eigen::Index r = 0; r < d_out; ++r) {
      for (Eigen::Index c = 0; c < d_in; ++c) {
        layer.weight(r, c) = init_rng.next_uniform(-bound, bound);
      }
    }
    layers.push_back(std::move(layer));
    AdamState st;
    st.mw = Eigen::MatrixXd::Zero(d_out, d_in);
    st.vw = Eigen::MatrixXd::Zero(d_out, d_in);
    st.mb = Eigen::VectorXd::Zero(d_out);
    st.vb = Eigen::VectorXd::Zero(d_out);
    adam.push_back(std::move(st));
  }

  const auto n_rows = static_cast<std::size_t>(data.inputs.rows());
  std::vector<int> order(n_rows);
  std::iota(order.begin(), order.end(), 0);

  const std::size_t n_layers = layers.size();
  std::vector<Eigen::VectorXd> pre(n_layers), act(n_layers);
  std::vector<Eigen::MatrixXd> grad_w(n_layers);
  std::vector<Eigen::VectorXd> grad_b(n_layers);

  std::int64_t step = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    double epoch_loss = 0.0;

    for (std::size_t start = 0; start < n_rows;
         start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t end =
          std::min(n_rows, start + static_cast<std::size_t>(cfg.batch_size));
      const double batch_count = static_cast<double>(end - start);

      for (std::size_t k = 0; k < n_layers; ++k) {
        grad_w[k] = Eigen::MatrixXd::Zero(layers[k].weight.rows(),
                                          layers[k].weight.cols());
        grad_b[k] = Eigen::VectorXd::Zero(layers[k].bias.size());
      }

      for (std::size_t t = start; t < end; ++t) {
        const Eigen::VectorXd x = data.inputs.row(order[t]);
        Eigen::VectorXd a = x;
        for (std::size_t k = 0; k < n_layers; ++k) {
          pre[k] = layers[k].weight * a + layers[k].bias;
          a = pre[k].unaryExpr([&](double v) {
            return activation_value(layers[k].activation, v);
          });
          act[k] = a;
        }

        Eigen::VectorXd g;
        epoch_loss += loss_and_output_grad(cfg.loss, arch.head, act.back(),
                                           data.labels(order[t]), g);

        for (std::size_t k = n_layers; k-- > 0;) {
          const Eigen::VectorXd d1 = pre[k].unaryExpr([&](double v) {
            return activation_d1(layers[k].activation, v);
          });
          const Eigen::VectorXd gz = g.cwiseProduct(d1);
          const Eigen::VectorXd& input = k == 0 ? x : act[k - 1];
          grad_w[k] += gz * input.transpose();
          grad_b[k] += gz;
          if (k > 0) g = layers[k].weight.transpose() * gz;
        }
      }

      ++step;
      const double bias1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(step));
      const double bias2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(step));
      for (std::size_t k = 0; k < n_layers; ++k) {
        const Eigen::MatrixXd gw = grad_w[k] / batch_count;
        const Eigen::VectorXd gb = grad_b[k] / batch_count;
        AdamState& st = adam[k];
        st.mw = kAdamBeta1 * st.mw + (1.0 - kAdamBeta1) * gw;
        st.vw = kAdamBeta2 * st.vw + (1.0 - kAdamBeta2) * gw.cwiseProduct(gw);
        st.mb = kAdamBeta1 * st.mb + (1.0 - kAdamBeta1) * gb;
        st.vb = kAdamBeta2 * st.vb + (1.0 - kAdamBeta2) * gb.cwiseProduct(gb);
        layers[k].weight -= cfg.learning_rate *
                            ((st.mw / bias1).array() /
                             ((st.vw / bias2).array().sqrt() + kAdamEps))
                                .matrix();
        layers[k].bias -= cfg.learning_rate *
                          ((st.mb / bias1).array() /
                           ((st.vb / bias2).array().sqrt() + kAdamEps))
                              .matrix();
      }
    }

    if (!std::isfinite(epoch_loss)) {
      throw_error(ErrorKind::kTraining,
                  "training diverged: non-finite loss at epoch " +
                      std::to_string(epoch + 1));
    }
  }

  return MlpModel(input_dim, arch.head, std::move(layers));
}

double training_accuracy(const MlpModel& model, const LabeledDataset& data,
                         Loss loss) {
  if (data.inputs.rows() == 0) {
    throw_error(ErrorKind::kInput, "dataset is empty");
  }
  std::int64_t hits = 0;
  for (Eigen::Index r = 0; r < data.inputs.rows(); ++r) {
    const double v = model.forward(data.inputs.row(r));
    const double label = data.labels(r);
    const bool hit = loss == Loss::kCrossEntropy
                         ? (v > 0.0) == (label == 1.0)
                         : std::abs(v - label) < 0.5;
    if (hit) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(data.inputs.rows());
}

}  // namespace shapbench
