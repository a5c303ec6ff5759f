#include "shapbench/shear.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "shapbench/combinatorics.hpp"
#include "shapbench/errors.hpp"

namespace shapbench {

CrossContribution cross_contribution(const ValueFunctionBinding& binding) {
  const int m = binding.feature_count();
  const Eigen::MatrixXd h =
      binding.model().input_cross_hessian(binding.instance());
  const Eigen::VectorXd& x = binding.instance();
  const Eigen::VectorXd& ref = binding.reference_values();

  CrossContribution cc;
  cc.eta = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const auto& cols_i = binding.groups().features[static_cast<std::size_t>(i)].columns;
    for (int j = i + 1; j < m; ++j) {
      const auto& cols_j =
          binding.groups().features[static_cast<std::size_t>(j)].columns;
      double eta = 0.0;
      for (int a : cols_i) {
        const double dev_a = std::abs(x(a) - ref(a));
        for (int b : cols_j) {
          const double dev_b = std::abs(x(b) - ref(b));
          eta += dev_a * std::abs(h(a, b) + h(b, a)) * dev_b;
        }
      }
      cc.eta(i, j) = eta;
      cc.eta(j, i) = eta;
    }
  }
  return cc;
}

Coalition select_cooperators(const CrossContribution& eta, int i, int k) {
  const int m = eta.feature_count();
  if (i < 0 || i >= m) {
    throw_error(ErrorKind::kArgument, "feature index out of range");
  }
  if (k < 0 || k > m - 1) {
    throw_error(ErrorKind::kArgument,
                "cooperator count " + std::to_string(k) +
                    " out of range [0, " + std::to_string(m - 1) + "]");
  }
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(m - 1));
  for (int j = 0; j < m; ++j) {
    if (j != i) order.push_back(j);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (eta.eta(i, a) != eta.eta(i, b)) return eta.eta(i, a) > eta.eta(i, b);
    return a < b;
  });
  Coalition s = Coalition::empty(m);
  for (int t = 0; t < k; ++t) s = s.with(order[static_cast<std::size_t>(t)]);
  return s;
}

SamplingPlan build_plan(const Coalition& cooperators, int target, int m,
                        Rng& rng) {
  if (cooperators.contains(target)) {
    throw_error(ErrorKind::kArgument,
                "target feature cannot be its own cooperator");
  }
  SamplingPlan plan;
  plan.target = target;
  plan.cooperators = cooperators;
  plan.subsets = subsets_of(cooperators);

  const Coalition rest =
      Coalition::universe(m).minus(cooperators).without(target);
  const std::size_t half = plan.subsets.size();  // 2^|S_i|
  plan.non_coop.resize(half, Coalition::empty(m));
  for (std::size_t n = 0; n < half; ++n) {
    const std::size_t mirror = half - 1 - n;
    if (n < mirror) {
      plan.non_coop[n] = Coalition(rng.next_submask(rest.bits()), m);
    } else if (n > mirror) {
      plan.non_coop[n] = rest.minus(plan.non_coop[mirror]);
    } else {
      // half == 1 (budget N = 2): the single draw has no mirror and stands.
      plan.non_coop[n] = Coalition(rng.next_submask(rest.bits()), m);
    }
  }
  return plan;
}

double estimate_feature(const ValueFunctionBinding& binding,
                        const SamplingPlan& plan, std::int64_t* eval_count) {
  const int k = plan.cooperators.size();
  std::vector<Coalition> batch;
  batch.reserve(2 * plan.subsets.size());
  for (std::size_t n = 0; n < plan.subsets.size(); ++n) {
    const Coalition base = plan.subsets[n].unite(plan.non_coop[n]);
    batch.push_back(base.with(plan.target));
    batch.push_back(base);
  }
  const std::vector<double> values = binding.value_batch(batch);
  if (eval_count != nullptr) {
    *eval_count += static_cast<std::int64_t>(values.size());
  }

  double phi = 0.0;
  for (std::size_t n = 0; n < plan.subsets.size(); ++n) {
    const double coeff =
        1.0 / static_cast<double>(binomial(k, plan.subsets[n].size()));
    phi += coeff * (values[2 * n] - values[2 * n + 1]);
  }
  return phi / static_cast<double>(k + 1);
}

Attribution shear_explain(const ValueFunctionBinding& binding, std::int64_t n,
                          std::uint64_t seed) {
  const int m = binding.feature_count();
  const auto un = static_cast<std::uint64_t>(n);
  if (n < 2 || !std::has_single_bit(un) ||
      (m < 64 && un > (std::uint64_t{1} << m))) {
    throw_error(ErrorKind::kArgument,
                "budget must be a power of two in [2, 2^M], got " +
                    std::to_string(n));
  }
  const int k = std::countr_zero(un) - 1;  // log2(N/2) cooperators

  Attribution out;
  out.method = Method::kShear;
  out.budget_n = n;
  out.seed = seed;
  out.phi.assign(static_cast<std::size_t>(m), 0.0);

  const CrossContribution eta = cross_contribution(binding);
  out.hessian_count = 1;

  // Per-feature loops are independent; each derives its own stream.
  for (int i = 0; i < m; ++i) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
    const Coalition coop = select_cooperators(eta, i, k);
    const SamplingPlan plan = build_plan(coop, i, m, rng);
    out.phi[static_cast<std::size_t>(i)] =
        estimate_feature(binding, plan, &out.eval_count);
  }
  return out;
}

}  // namespace shapbench
