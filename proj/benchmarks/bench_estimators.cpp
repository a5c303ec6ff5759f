// Microbenchmarks for the model evaluation primitives and every estimator at
// a sweep of budgets. Run: shapbench_benchmarks [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include <cstdint>

#include "shapbench/baselines.hpp"
#include "shapbench/exact.hpp"
#include "shapbench/fixture.hpp"
#include "shapbench/shear.hpp"
#include "shapbench/value_function.hpp"

namespace {

using namespace shapbench;

const FixtureData& fixture() {
  static const FixtureData fx = [] {
    FixtureSpec spec;
    spec.kind = FixtureKind::kTanhMlp;
    spec.m = 8;
    spec.seed = 9;
    spec.rows = 16;
    return build_fixture(spec);
  }();
  return fx;
}

const ValueFunctionBinding& binding() {
  static const ValueFunctionBinding b = bind_row(fixture(), 0);
  return b;
}

void BM_Forward(benchmark::State& state) {
  const auto& model = *fixture().model;
  const Eigen::VectorXd x = fixture().instances.row(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.forward(x));
  }
}
BENCHMARK(BM_Forward);

void BM_InputGradient(benchmark::State& state) {
  const auto& model = *fixture().model;
  const Eigen::VectorXd x = fixture().instances.row(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.input_gradient(x));
  }
}
BENCHMARK(BM_InputGradient);

void BM_CrossHessian(benchmark::State& state) {
  const auto& model = *fixture().model;
  const Eigen::VectorXd x = fixture().instances.row(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.input_cross_hessian(x));
  }
}
BENCHMARK(BM_CrossHessian);

void BM_ValueFunction(benchmark::State& state) {
  const auto& b = binding();
  const Coalition s(0b10110101, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(b.value(s));
  }
}
BENCHMARK(BM_ValueFunction);

void BM_ExactShapley(benchmark::State& state) {
  const auto& b = binding();
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_shapley(b));
  }
}
BENCHMARK(BM_ExactShapley);

void BM_ShearExplain(benchmark::State& state) {
  const auto& b = binding();
  const auto n = static_cast<std::int64_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(shear_explain(b, n, seed++));
  }
}
BENCHMARK(BM_ShearExplain)->RangeMultiplier(2)->Range(4, 256);

void BM_PermutationSampling(benchmark::State& state) {
  const auto& b = binding();
  const auto n = static_cast<std::int64_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(permutation_sampling(b, n, seed++));
  }
}
BENCHMARK(BM_PermutationSampling)->RangeMultiplier(2)->Range(4, 256);

void BM_AntitheticalPs(benchmark::State& state) {
  const auto& b = binding();
  const auto n = static_cast<std::int64_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(antithetical_ps(b, n, seed++));
  }
}
BENCHMARK(BM_AntitheticalPs)->RangeMultiplier(2)->Range(4, 256);

void BM_KernelShap(benchmark::State& state) {
  const auto& b = binding();
  const auto budget = static_cast<std::int64_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_shap(b, budget, seed++));
  }
}
BENCHMARK(BM_KernelShap)->RangeMultiplier(2)->Range(16, 256);

void BM_KsWelford(benchmark::State& state) {
  const auto& b = binding();
  const auto budget = static_cast<std::int64_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ks_welford(b, budget, seed++));
  }
}
BENCHMARK(BM_KsWelford)->RangeMultiplier(2)->Range(16, 256);

}  // namespace

BENCHMARK_MAIN();
