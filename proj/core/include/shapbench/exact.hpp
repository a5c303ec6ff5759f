#pragma once

#include <vector>

#include "shapbench/attribution.hpp"
#include "shapbench/coalition.hpp"
#include "shapbench/value_function.hpp"

namespace shapbench {

// Brute-force Shapley values: evaluates all 2^M coalition values once and
// combines the preceding differences with weights 1 / (M * C(M-1, |S|)).
// Resource error above kExactFeatureCap features.
inline constexpr int kExactFeatureCap = 20;
Attribution exact_shapley(const ValueFunctionBinding& binding);

// Shapley value of feature i in the sub-game restricted to cooperators
// S ∪ {i}; features outside stay at their reference values. Argument error if
// i is already in S.
double exact_shapley_restricted(const ValueFunctionBinding& binding, int i,
                                const Coalition& s);

// Chain-rule error term between the full game and the game without feature j:
// a sum of symmetrized feature-pair curvatures of the value function over all
// coalitions containing both features, scaled by the signed deviations.
// Brute force; capped at 12 features. Requires single-column features.
double delta_term(const ValueFunctionBinding& binding, int i, int j);

// Curvature bound constant: max over V ⊆ U \ {i,j} of one quarter of the
// absolute symmetrized pair curvature at the input masked to U \ V.
// Brute force; capped at 10 features. Requires single-column features.
double epsilon_bound(const ValueFunctionBinding& binding, int i, int j);

// Symmetrized pair curvature H(a, b) + H(b, a) of the value function at the
// input masked to coalition `s`, where a and b are the single columns of
// features i and j.
double pair_curvature(const ValueFunctionBinding& binding, const Coalition& s,
                      int i, int j);

// Total combinatorial weight of the chain-rule error term over coalition
// cardinalities; identically 1 for every m >= 2.
double delta_weight_total(int m);

}  // namespace shapbench
