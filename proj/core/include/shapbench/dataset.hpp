#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace shapbench {

// Numeric table loaded from a CSV with a header row. One-hot encoding of
// categorical data is expected to have happened upstream; every cell must
// parse as a double.
class Dataset {
 public:
  Dataset(std::vector<std::string> column_names, Eigen::MatrixXd values);

  static Dataset from_csv(const std::string& path);

  int rows() const { return static_cast<int>(values_.rows()); }
  int cols() const { return static_cast<int>(values_.cols()); }
  const std::vector<std::string>& column_names() const { return names_; }
  const Eigen::MatrixXd& values() const { return values_; }

  Eigen::VectorXd row(int r) const { return values_.row(r); }
  Eigen::VectorXd column(int c) const { return values_.col(c); }

  // Index of a named column; input error if absent.
  int column_index(const std::string& name) const;

  // Copy without the named column (used to drop a label column before
  // binding rows to a model input layout).
  Dataset drop_column(const std::string& name) const;

 private:
  std::vector<std::string> names_;
  Eigen::MatrixXd values_;
};

enum class FeatureKind { kContinuous, kCategorical };

struct FeatureGroup {
  std::string name;
  std::vector<int> columns;  // model-input column indices
  FeatureKind kind = FeatureKind::kContinuous;
};

// Feature-to-column map: each explained feature owns one or more model input
// columns (one-hot groups collapse to a single feature). Groups must be
// disjoint, non-empty and in range; together with an input_dim they must
// cover every input column so that masking the full coalition reproduces the
// raw instance.
struct FeatureGroups {
  std::vector<FeatureGroup> features;

  int feature_count() const { return static_cast<int>(features.size()); }

  // Validation error on overlap, gaps, out-of-range columns or > 63 features.
  void validate(int input_dim) const;

  static FeatureGroups scalar(int m, const std::string& prefix = "x");
  static FeatureGroups from_json_file(const std::string& path);
  std::string to_json_string() const;
};

enum class ReferencePolicy { kMean, kMode };

// Per-column reference values plus the policy each column used.
struct ReferenceVector {
  Eigen::VectorXd values;
  std::vector<ReferencePolicy> policies;

  static ReferenceVector from_csv_file(const std::string& path);
  std::string to_csv_string(const std::vector<std::string>& column_names) const;
};

// Column-wise references over a dataset: mean columns take the arithmetic
// mean, mode columns the most frequent value with ties broken by the smaller
// value. Input error on an empty dataset.
ReferenceVector compute_reference(const Eigen::MatrixXd& columns,
                                  const std::vector<ReferencePolicy>& policies);

// Policy per input column derived from the group kinds: continuous -> mean,
// categorical -> mode; `override_policy` forces one policy everywhere.
std::vector<ReferencePolicy> policies_from_groups(
    const FeatureGroups& groups, int input_dim,
    std::optional<ReferencePolicy> override_policy = std::nullopt);

}  // namespace shapbench
