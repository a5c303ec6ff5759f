#include "shapbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "shapbench/errors.hpp"

namespace shapbench {

namespace {

constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

void check_same_length(const std::vector<double>& a,
                       const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw_error(ErrorKind::kArgument, "attribution vectors differ in length");
  }
}

}  // namespace

bool metric_defined(double v) { return !std::isnan(v); }

double abs_error(const std::vector<double>& phi_exact,
                 const std::vector<double>& phi_hat) {
  check_same_length(phi_exact, phi_hat);
  double sum = 0.0;
  for (std::size_t i = 0; i < phi_exact.size(); ++i) {
    sum += std::abs(phi_exact[i] - phi_hat[i]);
  }
  return sum;
}

std::vector<int> importance_ranking(const std::vector<double>& phi) {
  std::vector<int> order(phi.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double pa = phi[static_cast<std::size_t>(a)];
    const double pb = phi[static_cast<std::size_t>(b)];
    if (pa != pb) return pa > pb;
    return a < b;
  });
  return order;
}

double rank_accuracy(const std::vector<double>& phi_exact,
                     const std::vector<double>& phi_hat) {
  check_same_length(phi_exact, phi_hat);
  const std::vector<int> exact_rank = importance_ranking(phi_exact);
  const std::vector<int> hat_rank = importance_ranking(phi_hat);
  double hits = 0.0;
  double norm = 0.0;
  for (std::size_t m = 0; m < exact_rank.size(); ++m) {
    const double w = 1.0 / static_cast<double>(m + 1);
    norm += w;
    if (exact_rank[m] == hat_rank[m]) hits += w;
  }
  return hits / norm;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  check_same_length(xs, ys);
  const std::size_t n = xs.size();
  if (n < 2) {
    throw_error(ErrorKind::kArgument, "pearson needs at least two points");
  }
  // Constant input has no defined correlation; compare extremes instead of
  // testing the accumulated variance, which rounding can leave slightly off
  // zero.
  const auto [x_min, x_max] = std::minmax_element(xs.begin(), xs.end());
  const auto [y_min, y_max] = std::minmax_element(ys.begin(), ys.end());
  if (*x_min == *x_max || *y_min == *y_max) return kUndefined;

  const double inv_n = 1.0 / static_cast<double>(n);
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) * inv_n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) * inv_n;
  double cov = 0.0, vx = 0.0, vy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    cov += dx * dy;
    vx += dx * dx;
    vy += dy * dy;
  }
  if (vx == 0.0 || vy == 0.0) return kUndefined;
  const double r = cov / std::sqrt(vx * vy);
  return std::clamp(r, -1.0, 1.0);
}

double faithfulness(const ValueFunctionBinding& binding,
                    const std::vector<double>& phi_hat) {
  const int m = binding.feature_count();
  if (m < 2) {
    throw_error(ErrorKind::kArgument, "faithfulness needs at least 2 features");
  }
  if (static_cast<int>(phi_hat.size()) != m) {
    throw_error(ErrorKind::kArgument, "attribution vector length mismatch");
  }
  const Coalition full = binding.full_coalition();
  const double v_full = binding.value(full);
  std::vector<double> diffs(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    diffs[static_cast<std::size_t>(i)] = v_full - binding.value(full.without(i));
  }
  return pearson(diffs, phi_hat);
}

double monotonicity(const ValueFunctionBinding& binding,
                    const std::vector<double>& phi_hat) {
  const int m = binding.feature_count();
  if (m < 2) {
    throw_error(ErrorKind::kArgument, "monotonicity needs at least 2 features");
  }
  if (static_cast<int>(phi_hat.size()) != m) {
    throw_error(ErrorKind::kArgument, "attribution vector length mismatch");
  }
  const std::vector<int> order = importance_ranking(phi_hat);

  // Marginal improvement of each ranked feature over the prefix of more
  // important ones.
  std::vector<double> delta(static_cast<std::size_t>(m));
  Coalition prefix = Coalition::empty(m);
  double prev = binding.value(prefix);
  for (int t = 0; t < m; ++t) {
    prefix = prefix.with(order[static_cast<std::size_t>(t)]);
    const double v = binding.value(prefix);
    delta[static_cast<std::size_t>(t)] = v - prev;
    prev = v;
  }

  int hits = 0;
  for (int t = 0; t + 1 < m; ++t) {
    if (delta[static_cast<std::size_t>(t)] >=
        delta[static_cast<std::size_t>(t + 1)]) {
      ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(m - 1);
}

}  // namespace shapbench
