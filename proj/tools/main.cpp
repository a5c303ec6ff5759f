// Command-line front end: train, oracle, explain, bench, report, fixture.
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shapbench/baselines.hpp"
#include "shapbench/bench.hpp"
#include "shapbench/csv.hpp"
#include "shapbench/dataset.hpp"
#include "shapbench/errors.hpp"
#include "shapbench/exact.hpp"
#include "shapbench/fixture.hpp"
#include "shapbench/model_io.hpp"
#include "shapbench/shear.hpp"
#include "shapbench/train.hpp"

namespace {

using namespace shapbench;

struct DataArgs {
  std::string model;
  std::string data;
  std::string groups;
  std::string references;
  std::string label;
  std::string ref_policy = "auto";
  int limit = 0;
};

void add_data_options(CLI::App* cmd, DataArgs& args, bool need_model = true) {
  if (need_model) {
    cmd->add_option("--model", args.model, "Model JSON file")->required();
  }
  cmd->add_option("--data", args.data, "Instance CSV (header row)")->required();
  cmd->add_option("--groups", args.groups, "Feature group map JSON")->required();
  cmd->add_option("--refs", args.references,
                  "Reference CSV (column,policy,value); computed from --data "
                  "when omitted");
  cmd->add_option("--label", args.label, "Label column to drop from --data");
  cmd->add_option("--ref-policy", args.ref_policy,
                  "Reference policy: auto (by feature kind), mean or mode")
      ->check(CLI::IsMember({"auto", "mean", "mode"}));
  cmd->add_option("--limit", args.limit, "Explain only the first K instances");
}

std::optional<ReferencePolicy> parse_ref_policy(const std::string& policy) {
  if (policy == "mean") return ReferencePolicy::kMean;
  if (policy == "mode") return ReferencePolicy::kMode;
  return std::nullopt;
}

BoundDataset load_from_args(const DataArgs& args) {
  return load_bound_dataset(args.model, args.data, args.groups,
                            args.references, args.label,
                            parse_ref_policy(args.ref_policy), args.limit);
}

int run_fixture(const std::string& kind, int m, std::uint64_t seed, int rows,
                const std::string& out_dir) {
  FixtureSpec spec;
  spec.kind = fixture_kind_from_name(kind);
  spec.m = m;
  spec.seed = seed;
  spec.rows = rows;
  make_fixture(spec, out_dir);
  std::cout << "fixture written to " << out_dir << "\n";
  return 0;
}

int run_train(const DataArgs& data_args, const std::string& label,
              const std::string& arch, const std::string& activation,
              const std::string& head, const TrainConfig& cfg,
              const std::string& loss, const std::string& out_path) {
  Dataset dataset = Dataset::from_csv(data_args.data);
  const int label_col = dataset.column_index(label);

  LabeledDataset labeled;
  labeled.labels = dataset.column(label_col);
  labeled.inputs = dataset.drop_column(label).values();

  ArchSpec spec;
  spec.activation = activation_from_name(activation);
  spec.head = head_from_name(head);
  std::stringstream dims(arch);
  std::string dim;
  while (std::getline(dims, dim, ',')) {
    if (!dim.empty()) spec.hidden.push_back(std::stoi(dim));
  }

  TrainConfig train_cfg = cfg;
  train_cfg.loss = loss == "squared_error" ? Loss::kSquaredError
                                           : Loss::kCrossEntropy;

  const MlpModel model = train(labeled, spec, train_cfg);
  save_model(model, out_path);
  std::cout << "model written to " << out_path << " (training accuracy "
            << training_accuracy(model, labeled, train_cfg.loss) << ")\n";
  return 0;
}

int run_oracle(const DataArgs& args, const std::string& out_path) {
  const BoundDataset data = load_from_args(args);
  std::vector<AttributionRow> rows;
  for (int r = 0; r < data.instances.rows(); ++r) {
    const Attribution attr = exact_shapley(data.bind(r));
    rows.push_back({r, method_name(Method::kExact), attr.budget_n, 0, attr.phi});
  }
  write_file_atomic(out_path, exact_to_csv(rows, data.feature_names));
  std::cout << rows.size() << " instances written to " << out_path << "\n";
  return 0;
}

int run_explain(const DataArgs& args, const std::string& method_str,
                std::int64_t n, std::uint64_t seed,
                const std::string& out_path) {
  const BoundDataset data = load_from_args(args);
  const Method method = method_from_name(method_str);
  std::vector<AttributionRow> rows;
  for (int r = 0; r < data.instances.rows(); ++r) {
    const Attribution attr = run_method(data.bind(r), method, n, seed);
    rows.push_back({r, method_name(method), n, seed, attr.phi});
  }
  write_file_atomic(out_path, attributions_to_csv(rows, data.feature_names));
  std::cout << rows.size() << " instances written to " << out_path << "\n";
  return 0;
}

int run_bench_cmd(const std::string& config_path) {
  BenchConfig cfg = bench_config_from_json_file(config_path);
  if (cfg.out_dir.empty()) {
    throw_error(ErrorKind::kConfig, "bench config needs an out_dir");
  }
  const EvalReport report = run_bench(cfg);
  std::cout << "bench wrote " << report.attributions.size()
            << " attribution rows and " << report.metrics.size()
            << " metric rows to " << cfg.out_dir << "\n";
  for (const std::string& err : report.cell_errors) {
    std::cerr << "cell skipped: " << err << "\n";
  }
  return 0;
}

int run_report(const DataArgs& args, const std::string& exact_csv,
               const std::string& estimates_csv, const std::string& out_dir) {
  const BoundDataset data = load_from_args(args);
  const EvalReport report = report_from_files(exact_csv, estimates_csv, data);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  write_file_atomic((dir / "metrics.csv").string(),
                    metrics_to_csv(report.metrics));
  write_file_atomic((dir / "aggregates.csv").string(),
                    aggregates_to_csv(report.aggregates));
  std::cout << report.metrics.size() << " metric rows written to " << out_dir
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shapley attribution toolkit: exact oracle, accelerated "
               "estimator, baselines and benchmark harness"};
  app.require_subcommand(1);

  // fixture
  auto* fixture_cmd =
      app.add_subcommand("fixture", "Generate a synthetic dataset + model");
  std::string fixture_kind = "tanh_mlp";
  int fixture_m = 6;
  std::uint64_t fixture_seed = 0;
  int fixture_rows = 200;
  std::string fixture_out;
  fixture_cmd->add_option("--kind", fixture_kind, "affine|quadratic|tanh_mlp")
      ->check(CLI::IsMember({"affine", "quadratic", "tanh_mlp"}));
  fixture_cmd->add_option("--m", fixture_m, "Feature count (2..12)")->required();
  fixture_cmd->add_option("--seed", fixture_seed, "Generator seed");
  fixture_cmd->add_option("--rows", fixture_rows, "Instance count");
  fixture_cmd->add_option("--out", fixture_out, "Output directory")->required();

  // train
  auto* train_cmd = app.add_subcommand("train", "Train an MLP on a CSV");
  DataArgs train_args;
  std::string train_label = "label";
  std::string train_arch = "16,16";
  std::string train_activation = "relu";
  std::string train_head = "scalar";
  std::string train_loss = "cross_entropy";
  std::string train_out;
  TrainConfig train_cfg;
  train_cfg.epochs = 50;
  train_cmd->add_option("--data", train_args.data, "Training CSV")->required();
  train_cmd->add_option("--label", train_label, "Label column name");
  train_cmd->add_option("--arch", train_arch, "Hidden dims, e.g. 16,16");
  train_cmd->add_option("--activation", train_activation,
                        "identity|relu|tanh|sigmoid");
  train_cmd->add_option("--head", train_head, "scalar|logit_diff");
  train_cmd->add_option("--loss", train_loss, "cross_entropy|squared_error")
      ->check(CLI::IsMember({"cross_entropy", "squared_error"}));
  train_cmd->add_option("--lr", train_cfg.learning_rate, "Learning rate");
  train_cmd->add_option("--epochs", train_cfg.epochs, "Epochs");
  train_cmd->add_option("--batch-size", train_cfg.batch_size, "Batch size");
  train_cmd->add_option("--seed", train_cfg.seed, "Init/shuffle seed");
  train_cmd->add_option("--out", train_out, "Output model JSON")->required();

  // oracle
  auto* oracle_cmd = app.add_subcommand(
      "oracle", "Exact per-instance Shapley values (brute force)");
  DataArgs oracle_args;
  std::string oracle_out;
  add_data_options(oracle_cmd, oracle_args);
  oracle_cmd->add_option("--out", oracle_out, "Output CSV")->required();

  // explain
  auto* explain_cmd =
      app.add_subcommand("explain", "Estimate attributions for each instance");
  DataArgs explain_args;
  std::string explain_method = "shear";
  std::int64_t explain_n = 16;
  std::uint64_t explain_seed = 0;
  std::string explain_out;
  add_data_options(explain_cmd, explain_args);
  explain_cmd
      ->add_option("--method", explain_method,
                   "shear|ks|ks-wf|ks-pair|ps|aps|exact")
      ->required();
  explain_cmd->add_option("--n", explain_n, "Evaluation budget N");
  explain_cmd->add_option("--seed", explain_seed, "Estimator seed");
  explain_cmd->add_option("--out", explain_out, "Output CSV")->required();

  // bench
  auto* bench_cmd =
      app.add_subcommand("bench", "Multi-method sweep driven by a JSON config");
  std::string bench_config;
  bench_cmd->add_option("--config", bench_config, "Bench config JSON")
      ->required();

  // report
  auto* report_cmd = app.add_subcommand(
      "report", "Metrics from exact + estimated attribution CSVs");
  DataArgs report_args;
  std::string report_exact;
  std::string report_estimates;
  std::string report_out;
  add_data_options(report_cmd, report_args);
  report_cmd->add_option("--exact", report_exact, "Exact attribution CSV")
      ->required();
  report_cmd
      ->add_option("--estimates", report_estimates, "Estimated attribution CSV")
      ->required();
  report_cmd->add_option("--out-dir", report_out, "Output directory")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (fixture_cmd->parsed()) {
      return run_fixture(fixture_kind, fixture_m, fixture_seed, fixture_rows,
                         fixture_out);
    }
    if (train_cmd->parsed()) {
      return run_train(train_args, train_label, train_arch, train_activation,
                       train_head, train_cfg, train_loss, train_out);
    }
    if (oracle_cmd->parsed()) {
      return run_oracle(oracle_args, oracle_out);
    }
    if (explain_cmd->parsed()) {
      return run_explain(explain_args, explain_method, explain_n, explain_seed,
                         explain_out);
    }
    if (bench_cmd->parsed()) {
      return run_bench_cmd(bench_config);
    }
    if (report_cmd->parsed()) {
      return run_report(report_args, report_exact, report_estimates,
                        report_out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_config_class() ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
