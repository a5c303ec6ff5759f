#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shapbench/attribution.hpp"
#include "shapbench/dataset.hpp"
#include "shapbench/metrics.hpp"
#include "shapbench/value_function.hpp"

namespace shapbench {

struct BenchConfig {
  std::string dataset_path;
  std::string groups_path;
  std::string model_path;
  std::string references_path;  // optional; computed from the data if empty
  std::string label_column;     // optional column dropped before binding
  std::vector<Method> methods;
  std::vector<std::int64_t> budgets;  // per-feature evaluation budgets N
  std::vector<std::uint64_t> seeds;
  int instance_limit = 0;  // 0 keeps every row
  std::string out_dir;
  std::optional<ReferencePolicy> ref_policy_override;
  int threads = 1;
  bool with_throughput = true;
};

BenchConfig bench_config_from_json_file(const std::string& path);
std::string bench_config_to_json_string(const BenchConfig& cfg);

struct ThroughputRecord {
  std::string method;
  std::int64_t budget_n = 0;
  int n_test = 0;
  double t_total = 0.0;     // wall seconds over the full explain loop
  double throughput = 0.0;  // n_test / t_total
};

struct AttributionRow {
  int instance_id = 0;
  std::string method;
  std::int64_t budget_n = 0;
  std::uint64_t seed = 0;
  std::vector<double> phi;
};

struct AggregateRecord {
  std::string method;
  std::int64_t budget_n = 0;
  std::string metric;
  double mean = 0.0;
  double stddev = 0.0;
  std::int64_t count = 0;
};

struct EvalReport {
  std::vector<AttributionRow> exact;
  std::vector<AttributionRow> attributions;
  std::vector<MetricRecord> metrics;
  std::vector<AggregateRecord> aggregates;
  std::vector<ThroughputRecord> throughput;
  std::vector<std::string> cell_errors;
  std::map<std::string, std::int64_t> value_calls;  // per (method, N, seed) cell
};

// Loaded benchmark inputs: model, instance rows, groups and references.
struct BoundDataset {
  std::unique_ptr<DifferentiableModel> model;
  Eigen::MatrixXd instances;
  FeatureGroups groups;
  ReferenceVector reference;
  std::vector<std::string> feature_names;

  int feature_count() const { return groups.feature_count(); }
  ValueFunctionBinding bind(int row) const;
};

BoundDataset load_bound_dataset(const std::string& model_path,
                                const std::string& dataset_path,
                                const std::string& groups_path,
                                const std::string& references_path,
                                const std::string& label_column,
                                std::optional<ReferencePolicy> ref_override,
                                int instance_limit);

// One estimator run. Kernel-family methods interpret `n` as their total
// sample budget here; the bench loop below applies the M-loop parity rule.
Attribution run_method(const ValueFunctionBinding& binding, Method method,
                       std::int64_t n, std::uint64_t seed);

// Kernel-family parity rule: run the estimator `loops` times at budget n
// with derived seeds and average the attributions, so the cell consumes
// about n * loops value calls like the permutation-family methods.
Attribution run_kernel_looped(const ValueFunctionBinding& binding,
                              Method method, std::int64_t n,
                              std::uint64_t seed, int loops);

// Fixed mixing of (method, budget, instance) into the master seed, so cell
// results do not depend on sweep order.
std::uint64_t cell_seed(std::uint64_t master, Method method, std::int64_t n,
                        int instance);

// Full harness: oracle, sweeps, metrics, aggregates, optional throughput
// pass, and CSV + manifest emission under cfg.out_dir. Attribution and
// metric outputs are byte-identical across reruns of the same config;
// throughput.csv is timing and may differ.
EvalReport run_bench(const BenchConfig& cfg);

// Dedicated single-threaded timing pass over the explain loop for each
// (method, budget) pair, using the first configured seed.
std::vector<ThroughputRecord> measure_throughput(const BenchConfig& cfg);

// Metric computation from previously written attribution CSVs.
EvalReport report_from_files(const std::string& exact_csv,
                             const std::string& estimates_csv,
                             const BoundDataset& data);

// CSV emitters (all carry a header row).
std::string exact_to_csv(const std::vector<AttributionRow>& rows,
                         const std::vector<std::string>& feature_names);
std::string attributions_to_csv(const std::vector<AttributionRow>& rows,
                                const std::vector<std::string>& feature_names);
std::string metrics_to_csv(const std::vector<MetricRecord>& records);
std::string aggregates_to_csv(const std::vector<AggregateRecord>& records);
std::string throughput_to_csv(const std::vector<ThroughputRecord>& records,
                              const std::string& host);

std::string host_description();

}  // namespace shapbench
