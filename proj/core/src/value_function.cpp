#include "shapbench/value_function.hpp"

#include <cmath>
#include <string>

#include "shapbench/errors.hpp"

namespace shapbench {

ValueFunctionBinding::ValueFunctionBinding(const DifferentiableModel& model,
                                           Eigen::VectorXd instance,
                                           ReferenceVector reference,
                                           FeatureGroups groups)
    : model_(&model),
      instance_(std::move(instance)),
      reference_(std::move(reference)),
      groups_(std::move(groups)) {
  if (instance_.size() != model_->input_dim()) {
    throw_error(ErrorKind::kConfig,
                "instance length " + std::to_string(instance_.size()) +
                    " does not match model input_dim " +
                    std::to_string(model_->input_dim()));
  }
  if (reference_.values.size() != model_->input_dim()) {
    throw_error(ErrorKind::kConfig,
                "reference length " + std::to_string(reference_.values.size()) +
                    " does not match model input_dim " +
                    std::to_string(model_->input_dim()));
  }
  if (!instance_.allFinite() || !reference_.values.allFinite()) {
    throw_error(ErrorKind::kInput, "non-finite instance or reference values");
  }
  groups_.validate(model_->input_dim());
}

void ValueFunctionBinding::check_coalition(const Coalition& s) const {
  if (s.universe_size() != feature_count()) {
    throw_error(ErrorKind::kArgument,
                "coalition universe " + std::to_string(s.universe_size()) +
                    " does not match feature count " +
                    std::to_string(feature_count()));
  }
}

Eigen::VectorXd ValueFunctionBinding::masked_input(const Coalition& s) const {
  check_coalition(s);
  Eigen::VectorXd x = reference_.values;
  for (int i = 0; i < feature_count(); ++i) {
    if (!s.contains(i)) continue;
    for (int c : groups_.features[static_cast<std::size_t>(i)].columns) {
      x(c) = instance_(c);
    }
  }
  return x;
}

double ValueFunctionBinding::value(const Coalition& s) const {
  return model_->forward(masked_input(s));
}

std::vector<double> ValueFunctionBinding::value_batch(
    const std::vector<Coalition>& coalitions) const {
  std::vector<double> out;
  out.reserve(coalitions.size());
  for (const Coalition& s : coalitions) out.push_back(value(s));
  return out;
}

std::vector<double> ValueFunctionBinding::feature_deviations() const {
  std::vector<double> out(static_cast<std::size_t>(feature_count()), 0.0);
  for (int i = 0; i < feature_count(); ++i) {
    double sq = 0.0;
    for (int c : groups_.features[static_cast<std::size_t>(i)].columns) {
      const double d = instance_(c) - reference_.values(c);
      sq += d * d;
    }
    out[static_cast<std::size_t>(i)] = std::sqrt(sq);
  }
  return out;
}

double ValueFunctionBinding::signed_deviation(int i) const {
  const int c = single_column(i);
  return instance_(c) - reference_.values(c);
}

int ValueFunctionBinding::single_column(int i) const {
  if (i < 0 || i >= feature_count()) {
    throw_error(ErrorKind::kArgument, "feature index out of range");
  }
  const FeatureGroup& g = groups_.features[static_cast<std::size_t>(i)];
  if (g.columns.size() != 1) {
    throw_error(ErrorKind::kArgument,
                "feature \"" + g.name +
                    "\" spans several columns; this operation needs "
                    "single-column features");
  }
  return g.columns.front();
}

}  // namespace shapbench
