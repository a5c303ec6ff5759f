#include "shapbench/exact.hpp"

#include <cmath>
#include <string>

#include "shapbench/combinatorics.hpp"
#include "shapbench/errors.hpp"

namespace shapbench {

namespace {

void check_pair(const ValueFunctionBinding& binding, int i, int j) {
  const int m = binding.feature_count();
  if (i == j) {
    throw_error(ErrorKind::kArgument, "feature pair needs i != j");
  }
  if (i < 0 || i >= m || j < 0 || j >= m) {
    throw_error(ErrorKind::kArgument, "feature index out of range");
  }
}

}  // namespace

Attribution exact_shapley(const ValueFunctionBinding& binding) {
  const int m = binding.feature_count();
  if (m > kExactFeatureCap) {
    throw_error(ErrorKind::kResource,
                "exact Shapley is capped at " +
                    std::to_string(kExactFeatureCap) + " features, got " +
                    std::to_string(m));
  }
  const std::uint64_t n_masks = std::uint64_t{1} << m;

  // All 2^M coalition values once, in increasing mask order.
  std::vector<double> values(n_masks);
  for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
    values[mask] = binding.value(Coalition(mask, m));
  }

  // Per-cardinality weights 1 / (M * C(M-1, s)) from exact integers.
  std::vector<double> weight(static_cast<std::size_t>(m));
  for (int s = 0; s < m; ++s) {
    weight[static_cast<std::size_t>(s)] =
        1.0 / (static_cast<double>(m) *
               static_cast<double>(binomial(m - 1, s)));
  }

  Attribution out;
  out.method = Method::kExact;
  out.budget_n = static_cast<std::int64_t>(n_masks);
  out.eval_count = static_cast<std::int64_t>(n_masks);
  out.phi.assign(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    double phi = 0.0;
    for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
      if (mask & bit) continue;
      phi += weight[static_cast<std::size_t>(std::popcount(mask))] *
             (values[mask | bit] - values[mask]);
    }
    out.phi[static_cast<std::size_t>(i)] = phi;
  }
  return out;
}

double exact_shapley_restricted(const ValueFunctionBinding& binding, int i,
                                const Coalition& s) {
  const int m = binding.feature_count();
  if (i < 0 || i >= m) {
    throw_error(ErrorKind::kArgument, "feature index out of range");
  }
  if (s.contains(i)) {
    throw_error(ErrorKind::kArgument,
                "restricted Shapley needs i outside the cooperator set");
  }
  if (s.size() > kExactFeatureCap) {
    throw_error(ErrorKind::kResource, "cooperator set too large for brute force");
  }
  const int mm = s.size() + 1;  // sub-game universe S ∪ {i}
  double phi = 0.0;
  for (const Coalition& b : subsets_of(s)) {
    const double w = 1.0 / (static_cast<double>(mm) *
                            static_cast<double>(binomial(mm - 1, b.size())));
    phi += w * (binding.value(b.with(i)) - binding.value(b));
  }
  return phi;
}

double pair_curvature(const ValueFunctionBinding& binding, const Coalition& s,
                      int i, int j) {
  check_pair(binding, i, j);
  const int a = binding.single_column(i);
  const int b = binding.single_column(j);
  const Eigen::MatrixXd h =
      binding.model().input_cross_hessian(binding.masked_input(s));
  return h(a, b) + h(b, a);
}

double delta_term(const ValueFunctionBinding& binding, int i, int j) {
  check_pair(binding, i, j);
  const int m = binding.feature_count();
  if (m > 12) {
    throw_error(ErrorKind::kResource,
                "delta term is capped at 12 features, got " + std::to_string(m));
  }
  const Coalition rest =
      Coalition::universe(m).without(i).without(j);
  double sum = 0.0;
  for (const Coalition& s : subsets_of(rest)) {
    const double curv = pair_curvature(binding, s.with(i).with(j), i, j);
    const double denom =
        2.0 * static_cast<double>(m - s.size() - 1) *
        static_cast<double>(binomial(m, s.size() + 1));
    sum += curv / denom;
  }
  return binding.signed_deviation(i) * binding.signed_deviation(j) * sum;
}

double epsilon_bound(const ValueFunctionBinding& binding, int i, int j) {
  check_pair(binding, i, j);
  const int m = binding.feature_count();
  if (m > 10) {
    throw_error(ErrorKind::kResource,
                "epsilon bound is capped at 10 features, got " +
                    std::to_string(m));
  }
  const Coalition universe = Coalition::universe(m);
  const Coalition rest = universe.without(i).without(j);
  double best = 0.0;
  for (const Coalition& v : subsets_of(rest)) {
    const double curv =
        std::abs(pair_curvature(binding, universe.minus(v), i, j));
    best = std::max(best, 0.25 * curv);
  }
  return best;
}

double delta_weight_total(int m) {
  if (m < 2) {
    throw_error(ErrorKind::kArgument, "weight total needs m >= 2");
  }
  double total = 0.0;
  for (int s = 0; s <= m - 2; ++s) {
    total += static_cast<double>(binomial(m - 2, s)) * 2.0 /
             (static_cast<double>(m - s - 1) *
              static_cast<double>(binomial(m, s + 1)));
  }
  return total;
}

}  // namespace shapbench
