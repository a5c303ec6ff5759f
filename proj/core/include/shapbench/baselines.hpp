#pragma once

#include <cstdint>
#include <vector>

#include "shapbench/attribution.hpp"
#include "shapbench/coalition.hpp"
#include "shapbench/value_function.hpp"

namespace shapbench {

// Shapley kernel weight of a proper, non-empty coalition:
// (M - 1) / (C(M, |S|) * |S| * (M - |S|)).
double kernel_weight(int m, int coalition_size);

// Kernel regression estimate: samples proper coalitions (size drawn
// proportionally to the aggregated kernel mass per size, uniform within a
// size) and solves the efficiency-constrained weighted least squares, so the
// attributions sum to f_v(U) - f_v(∅) exactly. Requires budget >= M + 2.
// A singular normal system falls back to a 1e-10 ridge and sets `ridged`.
Attribution kernel_shap(const ValueFunctionBinding& binding,
                        std::int64_t budget, std::uint64_t seed);

// Same solve on a caller-provided coalition list; with all 2^M - 2 proper
// coalitions this recovers the exact Shapley values.
Attribution kernel_shap_from_coalitions(const ValueFunctionBinding& binding,
                                        const std::vector<Coalition>& coalitions);

// Iterative variant: rank-1 running means of the coalition design and target,
// then the constrained closed-form solve. Contractually sequential. Fails
// with an estimation error while the running design matrix is still singular
// (not yet identifiable).
Attribution ks_welford(const ValueFunctionBinding& binding, std::int64_t budget,
                       std::uint64_t seed);

// Welford pass that visits every proper coalition exactly once, folding the
// kernel weight of each into the running means; recovers the exact values.
Attribution ks_welford_enumerated(const ValueFunctionBinding& binding);

// Kernel regression on sampled coalition/complement pairs; budget must be
// even (budget/2 draws plus their complements).
Attribution ks_pair(const ValueFunctionBinding& binding, std::int64_t budget,
                    std::uint64_t seed);

// Mean preceding difference over N uniformly drawn permutations; each
// feature's coalition is its set of predecessors. Unbiased.
Attribution permutation_sampling(const ValueFunctionBinding& binding,
                                 std::int64_t n, std::uint64_t seed);

// Same estimate over a caller-provided permutation list (e.g. all M! of
// them, which reproduces the exact values).
Attribution permutation_sampling_enumerated(
    const ValueFunctionBinding& binding,
    const std::vector<std::vector<int>>& permutations);

// Antithetical variant: N/2 uniform permutations, each paired with its
// reversal so the two predecessor sets of every feature are complements.
// N must be even.
Attribution antithetical_ps(const ValueFunctionBinding& binding, std::int64_t n,
                            std::uint64_t seed);

}  // namespace shapbench
