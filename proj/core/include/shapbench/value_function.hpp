#pragma once

#include <Eigen/Dense>
#include <vector>

#include "shapbench/coalition.hpp"
#include "shapbench/dataset.hpp"
#include "shapbench/model.hpp"

namespace shapbench {

// A model bound to one instance, its reference values and a feature-group
// map. value(S) evaluates the marginal value function: features in S take the
// instance's columns, everything else takes the reference columns. Immutable;
// concurrent read-only use is safe.
class ValueFunctionBinding {
 public:
  ValueFunctionBinding(const DifferentiableModel& model, Eigen::VectorXd instance,
                       ReferenceVector reference, FeatureGroups groups);

  int feature_count() const { return groups_.feature_count(); }
  int input_dim() const { return model_->input_dim(); }

  const DifferentiableModel& model() const { return *model_; }
  const Eigen::VectorXd& instance() const { return instance_; }
  const Eigen::VectorXd& reference_values() const { return reference_.values; }
  const FeatureGroups& groups() const { return groups_; }
  const std::string& feature_name(int i) const {
    return groups_.features[static_cast<std::size_t>(i)].name;
  }

  // Group-atomic masking: a feature's columns flip together.
  Eigen::VectorXd masked_input(const Coalition& s) const;

  double value(const Coalition& s) const;

  // Element-wise equal to value(); order preserved.
  std::vector<double> value_batch(const std::vector<Coalition>& coalitions) const;

  // |x_i - x̄_i| per feature; multi-column features use the Euclidean norm of
  // the column-wise deviations.
  std::vector<double> feature_deviations() const;

  // Signed deviation x_i - x̄_i. Only defined for single-column features;
  // argument error otherwise.
  double signed_deviation(int i) const;

  // The single input column of feature i; argument error for group features.
  int single_column(int i) const;

  Coalition full_coalition() const {
    return Coalition::universe(feature_count());
  }

 private:
  void check_coalition(const Coalition& s) const;

  const DifferentiableModel* model_;
  Eigen::VectorXd instance_;
  ReferenceVector reference_;
  FeatureGroups groups_;
};

}  // namespace shapbench
