#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shapbench/value_function.hpp"

namespace shapbench {

// Undefined metrics (zero-variance inputs) evaluate to NaN and are excluded
// from aggregates.
bool metric_defined(double v);

// Sum of componentwise absolute differences.
double abs_error(const std::vector<double>& phi_exact,
                 const std::vector<double>& phi_hat);

// Feature indices in descending attribution order; ties broken by the
// smaller index.
std::vector<int> importance_ranking(const std::vector<double>& phi);

// Harmonically weighted agreement between the two descending rankings:
// (sum_m 1[r̂_m = r_m] / m) / (sum_m 1 / m), in [0, 1].
double rank_accuracy(const std::vector<double>& phi_exact,
                     const std::vector<double>& phi_hat);

// Pearson correlation with the population convention for both covariance
// and standard deviations, clamped to [-1, 1] against rounding. NaN sentinel
// on constant input.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

// Correlation between the leave-one-out preceding differences
// f_v(U) - f_v(U \ {i}) and the attribution vector. M + 1 value calls.
double faithfulness(const ValueFunctionBinding& binding,
                    const std::vector<double>& phi_hat);

// Fraction of adjacent positions in the attribution ranking whose marginal
// improvements are ordered consistently, using prefix coalitions of the
// ranking (the top feature's improvement is taken over the empty prefix).
double monotonicity(const ValueFunctionBinding& binding,
                    const std::vector<double>& phi_hat);

struct MetricRecord {
  int instance_id = 0;
  std::string method;
  std::int64_t budget_n = 0;
  std::uint64_t seed = 0;
  double ae = 0.0;
  double acc = 0.0;
  double faithfulness = 0.0;
  double monotonicity = 0.0;
};

}  // namespace shapbench
