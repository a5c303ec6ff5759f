#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "shapbench/mlp.hpp"

namespace shapbench {

enum class Loss { kCrossEntropy, kSquaredError };

struct TrainConfig {
  double learning_rate = 1e-3;
  int epochs = 1;
  int batch_size = 256;
  std::uint64_t seed = 0;
  Loss loss = Loss::kCrossEntropy;
};

struct ArchSpec {
  std::vector<int> hidden;
  Activation activation = Activation::kRelu;
  Head head = Head::kScalar;
};

struct LabeledDataset {
  Eigen::MatrixXd inputs;  // rows are instances
  Eigen::VectorXd labels;
};

// Adam-trained feed-forward model. Weights start uniform in
// (-1/sqrt(D_in), 1/sqrt(D_in)) per layer from the seeded stream; the epoch
// shuffle uses a second stream derived from the same seed, so the result is
// bit-identical across runs with the same seed. Cross-entropy expects binary
// labels. A non-finite epoch loss raises a training-divergence error naming
// the epoch.
MlpModel train(const LabeledDataset& data, const ArchSpec& arch,
               const TrainConfig& cfg);

// Classification accuracy under the model's sign rule (cross-entropy) or a
// 0.5 window around the label (squared error).
double training_accuracy(const MlpModel& model, const LabeledDataset& data,
                         Loss loss);

}  // namespace shapbench
