#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "shapbench/attribution.hpp"
#include "shapbench/coalition.hpp"
#include "shapbench/rng.hpp"
#include "shapbench/value_function.hpp"

namespace shapbench {

// Pairwise interaction strengths: eta(i, j) weights the symmetrized input
// curvature by both features' deviations from reference. Symmetric,
// non-negative, zero diagonal.
struct CrossContribution {
  Eigen::MatrixXd eta;

  int feature_count() const { return static_cast<int>(eta.rows()); }
};

// One curvature extraction at the full (unmasked) instance. Group features
// aggregate |x_a - x̄_a| |H_ab + H_ba| |x_b - x̄_b| over their column pairs.
CrossContribution cross_contribution(const ValueFunctionBinding& binding);

// The k features j != i with the largest eta(i, j); ties broken by the
// smaller index. k = 0 returns the empty coalition; k > M-1 is an argument
// error. Greedy selection is optimal for this additive objective.
Coalition select_cooperators(const CrossContribution& eta, int i, int k);

// Evaluation schedule for one feature: the subsets of the cooperator set in
// increasing mask order, each padded with a draw from the non-cooperators.
// Mirrored indices n and N/2+1-n carry complementary draws, so each draw and
// its mirror partition the non-cooperator set.
struct SamplingPlan {
  int target = 0;
  Coalition cooperators;
  std::vector<Coalition> subsets;      // S_n, increasing mask order
  std::vector<Coalition> non_coop;     // V_n, one per subset
};

SamplingPlan build_plan(const Coalition& cooperators, int target, int m,
                        Rng& rng);

// Antithetically revised estimate for one feature: weighted preceding
// differences f_v({i} ∪ S_n ∪ V_n) - f_v(S_n ∪ V_n) over the plan. Makes
// exactly 2 * 2^|S_i| value-function calls.
double estimate_feature(const ValueFunctionBinding& binding,
                        const SamplingPlan& plan,
                        std::int64_t* eval_count = nullptr);

// Full estimator: one shared curvature extraction, then per feature
// log2(N/2) cooperators, a plan and an estimate. N must be a power of two in
// [2, 2^M]. Per-feature streams are derived from the seed by a fixed mixing
// rule, so results do not depend on scheduling.
Attribution shear_explain(const ValueFunctionBinding& binding, std::int64_t n,
                          std::uint64_t seed);

}  // namespace shapbench
