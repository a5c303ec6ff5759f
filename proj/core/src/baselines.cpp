#include "shapbench/baselines.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "shapbench/combinatorics.hpp"
#include "shapbench/errors.hpp"
#include "shapbench/rng.hpp"

namespace shapbench {

double kernel_weight(int m, int coalition_size) {
  if (coalition_size <= 0 || coalition_size >= m) {
    throw_error(ErrorKind::kArgument,
                "kernel weight is defined for proper non-empty coalitions");
  }
  return static_cast<double>(m - 1) /
         (static_cast<double>(binomial(m, coalition_size)) *
          static_cast<double>(coalition_size) *
          static_cast<double>(m - coalition_size));
}

namespace {

constexpr double kRidge = 1e-10;

Eigen::VectorXd indicator(const Coalition& s) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(s.universe_size());
  for (int i = 0; i < s.universe_size(); ++i) {
    if (s.contains(i)) v(i) = 1.0;
  }
  return v;
}

// Cumulative distribution over coalition sizes 1..M-1, each size carrying the
// total kernel mass of its coalitions: C(M, s) * pi(s) = (M-1) / (s (M-s)).
std::vector<double> size_cdf(int m) {
  std::vector<double> cdf(static_cast<std::size_t>(m - 1));
  double total = 0.0;
  for (int s = 1; s < m; ++s) {
    total += 1.0 / (static_cast<double>(s) * static_cast<double>(m - s));
    cdf[static_cast<std::size_t>(s - 1)] = total;
  }
  for (double& v : cdf) v /= total;
  cdf.back() = 1.0;
  return cdf;
}

Coalition sample_kernel_coalition(int m, const std::vector<double>& cdf,
                                  Rng& rng, std::vector<int>& scratch) {
  const double u = rng.next_double();
  int size = 1;
  while (size < m - 1 && u > cdf[static_cast<std::size_t>(size - 1)]) ++size;

  // Uniform size-`size` subset via a partial Fisher-Yates.
  scratch.resize(static_cast<std::size_t>(m));
  std::iota(scratch.begin(), scratch.end(), 0);
  std::uint64_t bits = 0;
  for (int t = 0; t < size; ++t) {
    const auto j =
        t + static_cast<std::size_t>(rng.next_index(
                static_cast<std::uint64_t>(m - t)));
    std::swap(scratch[static_cast<std::size_t>(t)], scratch[j]);
    bits |= std::uint64_t{1} << scratch[static_cast<std::size_t>(t)];
  }
  return Coalition(bits, m);
}

struct ConstrainedSolve {
  Eigen::VectorXd phi;
  bool ridged = false;
};

// Solves min sum_n w_n (y_n - phi . 1_{S_n})^2 subject to sum(phi) = d via
// the normal equations and a Lagrange correction.
ConstrainedSolve solve_constrained(const Eigen::MatrixXd& gram,
                                   const Eigen::VectorXd& moment, double d) {
  const Eigen::Index m = gram.rows();
  ConstrainedSolve out;
  Eigen::MatrixXd g = gram;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
  if (!lu.isInvertible()) {
    g += kRidge * Eigen::MatrixXd::Identity(m, m);
    lu.compute(g);
    out.ridged = true;
  }
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m);
  Eigen::VectorXd u = lu.solve(moment);
  Eigen::VectorXd w = lu.solve(ones);
  double denom = ones.dot(w);
  if (!std::isfinite(denom) || std::abs(denom) < 1e-300) {
    g += kRidge * Eigen::MatrixXd::Identity(m, m);
    lu.compute(g);
    out.ridged = true;
    u = lu.solve(moment);
    w = lu.solve(ones);
    denom = ones.dot(w);
  }
  out.phi = u - w * ((ones.dot(u) - d) / denom);
  return out;
}

Attribution solve_kernel_system(const ValueFunctionBinding& binding,
                                const std::vector<Coalition>& coalitions,
                                Method method) {
  const int m = binding.feature_count();
  const double v_full = binding.value(binding.full_coalition());
  const double v_empty = binding.value(Coalition::empty(m));

  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd moment = Eigen::VectorXd::Zero(m);
  for (const Coalition& s : coalitions) {
    const double w = kernel_weight(m, s.size());
    const Eigen::VectorXd z = indicator(s);
    gram += w * z * z.transpose();
    moment += w * (binding.value(s) - v_empty) * z;
  }

  const ConstrainedSolve solved =
      solve_constrained(gram, moment, v_full - v_empty);

  Attribution out;
  out.method = method;
  out.budget_n = static_cast<std::int64_t>(coalitions.size());
  out.eval_count = static_cast<std::int64_t>(coalitions.size()) + 2;
  out.ridged = solved.ridged;
  out.phi.assign(solved.phi.data(), solved.phi.data() + m);
  return out;
}

void check_kernel_budget(const ValueFunctionBinding& binding,
                         std::int64_t budget) {
  if (budget < binding.feature_count() + 2) {
    throw_error(ErrorKind::kArgument,
                "kernel estimators need a budget of at least M + 2");
  }
}

}  // namespace

Attribution kernel_shap(const ValueFunctionBinding& binding,
                        std::int64_t budget, std::uint64_t seed) {
  check_kernel_budget(binding, budget);
  const int m = binding.feature_count();
  Rng rng(seed);
  const std::vector<double> cdf = size_cdf(m);
  std::vector<int> scratch;
  std::vector<Coalition> coalitions;
  coalitions.reserve(static_cast<std::size_t>(budget));
  for (std::int64_t n = 0; n < budget; ++n) {
    coalitions.push_back(sample_kernel_coalition(m, cdf, rng, scratch));
  }
  Attribution out = solve_kernel_system(binding, coalitions, Method::kKs);
  out.seed = seed;
  return out;
}

Attribution kernel_shap_from_coalitions(
    const ValueFunctionBinding& binding,
    const std::vector<Coalition>& coalitions) {
  return solve_kernel_system(binding, coalitions, Method::kKs);
}

namespace {

Attribution ks_welford_solve(const ValueFunctionBinding& binding,
                             const Eigen::MatrixXd& design_mean,
                             const Eigen::VectorXd& target_mean,
                             std::int64_t budget, std::int64_t evals) {
  const int m = binding.feature_count();
  const double v_full = binding.value(binding.full_coalition());
  const double v_empty = binding.value(Coalition::empty(m));

  Eigen::FullPivLU<Eigen::MatrixXd> lu(design_mean);
  if (!lu.isInvertible()) {
    throw_error(ErrorKind::kEstimation,
                "running design matrix is singular: estimate not yet "
                "identifiable after " +
                    std::to_string(budget) + " samples");
  }
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m);
  const Eigen::VectorXd u = lu.solve(target_mean);
  const Eigen::VectorXd w = lu.solve(ones);
  const double correction =
      (ones.dot(u) - v_full + v_empty) / ones.dot(w);
  const Eigen::VectorXd phi = u - w * correction;

  Attribution out;
  out.method = Method::kKsWf;
  out.budget_n = budget;
  out.eval_count = evals + 2;
  out.phi.assign(phi.data(), phi.data() + m);
  return out;
}

}  // namespace

Attribution ks_welford(const ValueFunctionBinding& binding, std::int64_t budget,
                       std::uint64_t seed) {
  check_kernel_budget(binding, budget);
  const int m = binding.feature_count();
  Rng rng(seed);
  const std::vector<double> cdf = size_cdf(m);
  std::vector<int> scratch;
  const double v_empty = binding.value(Coalition::empty(m));

  // Plain running means over kernel-distributed draws; the feed-forward
  // update order is part of the contract. The target carries the coalition
  // value over the base value: with the raw value the base-value offset
  // only cancels in expectation and additive games stop being exact.
  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd target = Eigen::VectorXd::Zero(m);
  for (std::int64_t n = 1; n <= budget; ++n) {
    const Coalition s = sample_kernel_coalition(m, cdf, rng, scratch);
    const Eigen::VectorXd z = indicator(s);
    const double inv_n = 1.0 / static_cast<double>(n);
    design = (1.0 - inv_n) * design + inv_n * (z * z.transpose());
    target =
        (1.0 - inv_n) * target + inv_n * ((binding.value(s) - v_empty) * z);
  }
  Attribution out = ks_welford_solve(binding, design, target, budget, budget);
  out.seed = seed;
  return out;
}

Attribution ks_welford_enumerated(const ValueFunctionBinding& binding) {
  const int m = binding.feature_count();
  if (m > 20) {
    throw_error(ErrorKind::kResource, "proper-coalition enumeration capped at 20 features");
  }
  const double v_empty = binding.value(Coalition::empty(m));
  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd target = Eigen::VectorXd::Zero(m);
  double total_weight = 0.0;
  std::int64_t count = 0;
  const std::uint64_t n_masks = std::uint64_t{1} << m;
  for (std::uint64_t mask = 1; mask + 1 < n_masks; ++mask) {
    const Coalition s(mask, m);
    const double w = kernel_weight(m, s.size());
    const Eigen::VectorXd z = indicator(s);
    total_weight += w;
    const double step = w / total_weight;
    design += step * (z * z.transpose() - design);
    target += step * ((binding.value(s) - v_empty) * z - target);
    ++count;
  }
  return ks_welford_solve(binding, design, target, count, count);
}

Attribution ks_pair(const ValueFunctionBinding& binding, std::int64_t budget,
                    std::uint64_t seed) {
  if (budget % 2 != 0) {
    throw_error(ErrorKind::kArgument, "pair sampling needs an even budget");
  }
  check_kernel_budget(binding, budget);
  const int m = binding.feature_count();
  Rng rng(seed);
  const std::vector<double> cdf = size_cdf(m);
  std::vector<int> scratch;
  std::vector<Coalition> coalitions;
  coalitions.reserve(static_cast<std::size_t>(budget));
  for (std::int64_t n = 0; n < budget / 2; ++n) {
    const Coalition s = sample_kernel_coalition(m, cdf, rng, scratch);
    coalitions.push_back(s);
    coalitions.push_back(s.complement());
  }
  Attribution out = solve_kernel_system(binding, coalitions, Method::kKsPair);
  out.seed = seed;
  return out;
}

namespace {

// Walks one permutation's prefix chain, adding each feature's preceding
// difference into `phi`. Evaluates M prefixes; the empty-coalition value is
// shared by every chain.
void accumulate_permutation(const ValueFunctionBinding& binding,
                            const std::vector<int>& perm, double v_empty,
                            std::vector<double>& phi, std::int64_t& evals) {
  const int m = binding.feature_count();
  Coalition prefix = Coalition::empty(m);
  double prev = v_empty;
  for (int t = 0; t < m; ++t) {
    prefix = prefix.with(perm[static_cast<std::size_t>(t)]);
    const double v = binding.value(prefix);
    ++evals;
    phi[static_cast<std::size_t>(perm[static_cast<std::size_t>(t)])] += v - prev;
    prev = v;
  }
}

Attribution ps_over_permutations(const ValueFunctionBinding& binding,
                                 const std::vector<std::vector<int>>& perms,
                                 Method method) {
  const int m = binding.feature_count();
  std::vector<double> phi(static_cast<std::size_t>(m), 0.0);
  std::int64_t evals = 0;
  const double v_empty = binding.value(Coalition::empty(m));
  ++evals;
  for (const auto& perm : perms) {
    accumulate_permutation(binding, perm, v_empty, phi, evals);
  }
  for (double& p : phi) p /= static_cast<double>(perms.size());

  Attribution out;
  out.method = method;
  out.budget_n = static_cast<std::int64_t>(perms.size());
  out.eval_count = evals;
  out.phi = std::move(phi);
  return out;
}

}  // namespace

Attribution permutation_sampling(const ValueFunctionBinding& binding,
                                 std::int64_t n, std::uint64_t seed) {
  if (n < 1) {
    throw_error(ErrorKind::kArgument, "permutation sampling needs n >= 1");
  }
  const int m = binding.feature_count();
  Rng rng(seed);
  std::vector<std::vector<int>> perms;
  perms.reserve(static_cast<std::size_t>(n));
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  for (std::int64_t t = 0; t < n; ++t) {
    rng.shuffle(perm);
    perms.push_back(perm);
  }
  Attribution out = ps_over_permutations(binding, perms, Method::kPs);
  out.seed = seed;
  return out;
}

Attribution permutation_sampling_enumerated(
    const ValueFunctionBinding& binding,
    const std::vector<std::vector<int>>& permutations) {
  if (permutations.empty()) {
    throw_error(ErrorKind::kArgument, "permutation list is empty");
  }
  return ps_over_permutations(binding, permutations, Method::kPs);
}

Attribution antithetical_ps(const ValueFunctionBinding& binding, std::int64_t n,
                            std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) {
    throw_error(ErrorKind::kArgument,
                "antithetical permutation sampling needs an even n >= 2");
  }
  const int m = binding.feature_count();
  Rng rng(seed);
  std::vector<std::vector<int>> perms;
  perms.reserve(static_cast<std::size_t>(n));
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  for (std::int64_t t = 0; t < n / 2; ++t) {
    rng.shuffle(perm);
    perms.push_back(perm);
  }
  for (std::int64_t t = 0; t < n / 2; ++t) {
    std::vector<int> rev = perms[static_cast<std::size_t>(t)];
    std::reverse(rev.begin(), rev.end());
    perms.push_back(std::move(rev));
  }
  Attribution out = ps_over_permutations(binding, perms, Method::kAps);
  out.method = Method::kAps;
  out.seed = seed;
  return out;
}

}  // namespace shapbench
