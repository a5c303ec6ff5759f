#include "shapbench/bench.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "shapbench/baselines.hpp"
#include "shapbench/csv.hpp"
#include "shapbench/errors.hpp"
#include "shapbench/exact.hpp"
#include "shapbench/model_io.hpp"
#include "shapbench/rng.hpp"
#include "shapbench/shear.hpp"

namespace shapbench {

namespace {

bool is_kernel_method(Method m) {
  return m == Method::kKs || m == Method::kKsWf || m == Method::kKsPair;
}

std::string cell_key(Method method, std::int64_t n, std::uint64_t seed) {
  std::ostringstream key;
  key << method_name(method) << "|" << n << "|" << seed;
  return key.str();
}

double sample_stddev(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

}  // namespace

ValueFunctionBinding BoundDataset::bind(int row) const {
  return ValueFunctionBinding(*model, instances.row(row), reference, groups);
}

BoundDataset load_bound_dataset(const std::string& model_path,
                                const std::string& dataset_path,
                                const std::string& groups_path,
                                const std::string& references_path,
                                const std::string& label_column,
                                std::optional<ReferencePolicy> ref_override,
                                int instance_limit) {
  BoundDataset out;
  out.model = load_model(model_path);

  Dataset dataset = Dataset::from_csv(dataset_path);
  if (!label_column.empty()) {
    dataset = dataset.drop_column(label_column);
  }
  if (dataset.cols() != out.model->input_dim()) {
    throw_error(ErrorKind::kConfig,
                "dataset has " + std::to_string(dataset.cols()) +
                    " feature columns but the model expects " +
                    std::to_string(out.model->input_dim()));
  }

  out.groups = FeatureGroups::from_json_file(groups_path);
  out.groups.validate(out.model->input_dim());
  for (const FeatureGroup& g : out.groups.features) {
    out.feature_names.push_back(g.name);
  }

  if (references_path.empty()) {
    out.reference = compute_reference(
        dataset.values(),
        policies_from_groups(out.groups, out.model->input_dim(), ref_override));
  } else {
    out.reference = ReferenceVector::from_csv_file(references_path);
    if (out.reference.values.size() != out.model->input_dim()) {
      throw_error(ErrorKind::kConfig,
                  "reference vector length does not match model input dim");
    }
  }

  const int rows = instance_limit > 0
                       ? std::min(instance_limit, dataset.rows())
                       : dataset.rows();
  out.instances = dataset.values().topRows(rows);
  return out;
}

std::uint64_t cell_seed(std::uint64_t master, Method method, std::int64_t n,
                        int instance) {
  std::uint64_t h = fnv1a64(method_name(method));
  h = fnv1a64_u64(static_cast<std::uint64_t>(n), h);
  h = fnv1a64_u64(static_cast<std::uint64_t>(instance), h);
  return splitmix64(master ^ h);
}

Attribution run_method(const ValueFunctionBinding& binding, Method method,
                       std::int64_t n, std::uint64_t seed) {
  switch (method) {
    case Method::kExact: return exact_shapley(binding);
    case Method::kShear: return shear_explain(binding, n, seed);
    case Method::kKs: return kernel_shap(binding, n, seed);
    case Method::kKsWf: return ks_welford(binding, n, seed);
    case Method::kKsPair: return ks_pair(binding, n, seed);
    case Method::kPs: return permutation_sampling(binding, n, seed);
    case Method::kAps: return antithetical_ps(binding, n, seed);
  }
  throw_error(ErrorKind::kArgument, "unknown method");
}

Attribution run_kernel_looped(const ValueFunctionBinding& binding,
                              Method method, std::int64_t n,
                              std::uint64_t seed, int loops) {
  Attribution avg;
  avg.method = method;
  avg.budget_n = n;
  avg.seed = seed;
  avg.phi.assign(static_cast<std::size_t>(binding.feature_count()), 0.0);
  for (int loop = 0; loop < loops; ++loop) {
    const Attribution one = run_method(
        binding, method, n, mix_seed(seed, static_cast<std::uint64_t>(loop)));
    for (std::size_t i = 0; i < avg.phi.size(); ++i) avg.phi[i] += one.phi[i];
    avg.eval_count += one.eval_count;
    avg.ridged = avg.ridged || one.ridged;
  }
  for (double& p : avg.phi) p /= static_cast<double>(loops);
  return avg;
}

namespace {

Attribution run_cell_instance(const ValueFunctionBinding& binding,
                              Method method, std::int64_t n,
                              std::uint64_t master_seed, int instance) {
  const std::uint64_t seed = cell_seed(master_seed, method, n, instance);
  if (is_kernel_method(method)) {
    return run_kernel_looped(binding, method, n, seed,
                             binding.feature_count());
  }
  return run_method(binding, method, n, seed);
}

void validate_config(const BenchConfig& cfg) {
  if (cfg.methods.empty()) {
    throw_error(ErrorKind::kConfig, "bench config needs at least one method");
  }
  if (cfg.budgets.empty()) {
    throw_error(ErrorKind::kConfig, "bench config needs at least one budget");
  }
  if (cfg.seeds.empty()) {
    throw_error(ErrorKind::kConfig, "bench config needs at least one seed");
  }
  const bool has_shear =
      std::find(cfg.methods.begin(), cfg.methods.end(), Method::kShear) !=
      cfg.methods.end();
  if (has_shear) {
    for (std::int64_t n : cfg.budgets) {
      if (n < 2 || !std::has_single_bit(static_cast<std::uint64_t>(n))) {
        throw_error(ErrorKind::kConfig,
                    "budgets must be powers of two when shear is enabled");
      }
    }
  }
}

}  // namespace

EvalReport run_bench(const BenchConfig& cfg) {
  validate_config(cfg);
  const BoundDataset data = load_bound_dataset(
      cfg.model_path, cfg.dataset_path, cfg.groups_path, cfg.references_path,
      cfg.label_column, cfg.ref_policy_override, cfg.instance_limit);
  const int m = data.feature_count();
  const int n_test = static_cast<int>(data.instances.rows());

  if (m > kExactFeatureCap) {
    throw_error(ErrorKind::kConfig,
                "AE/ACC need the brute-force oracle, which is capped at " +
                    std::to_string(kExactFeatureCap) + " features");
  }

  EvalReport report;

  // Ground truth once per instance.
  std::vector<std::vector<double>> exact_phi(
      static_cast<std::size_t>(n_test));
  for (int r = 0; r < n_test; ++r) {
    const Attribution oracle = exact_shapley(data.bind(r));
    exact_phi[static_cast<std::size_t>(r)] = oracle.phi;
    report.exact.push_back({r, method_name(Method::kExact), oracle.budget_n,
                            0, oracle.phi});
  }

  // Sweep cells; a failing cell is logged and skipped, the rest continue.
  for (Method method : cfg.methods) {
    for (std::int64_t n : cfg.budgets) {
      for (std::uint64_t master : cfg.seeds) {
        std::vector<Attribution> results(static_cast<std::size_t>(n_test));
        try {
          const auto worker = [&](int begin, int end) {
            for (int r = begin; r < end; ++r) {
              results[static_cast<std::size_t>(r)] =
                  run_cell_instance(data.bind(r), method, n, master, r);
            }
          };
          if (cfg.threads > 1) {
            const int chunks = std::min(cfg.threads, n_test);
            std::vector<std::future<void>> futures;
            for (int c = 0; c < chunks; ++c) {
              const int begin = n_test * c / chunks;
              const int end = n_test * (c + 1) / chunks;
              futures.push_back(
                  std::async(std::launch::async, worker, begin, end));
            }
            for (auto& f : futures) f.get();
          } else {
            worker(0, n_test);
          }
        } catch (const Error& e) {
          report.cell_errors.push_back(cell_key(method, n, master) + ": " +
                                       e.what());
          continue;
        }

        std::int64_t cell_calls = 0;
        for (int r = 0; r < n_test; ++r) {
          const Attribution& attr = results[static_cast<std::size_t>(r)];
          cell_calls += attr.eval_count;
          report.attributions.push_back(
              {r, method_name(method), n, master, attr.phi});
          const ValueFunctionBinding binding = data.bind(r);
          MetricRecord rec;
          rec.instance_id = r;
          rec.method = method_name(method);
          rec.budget_n = n;
          rec.seed = master;
          rec.ae = abs_error(exact_phi[static_cast<std::size_t>(r)], attr.phi);
          rec.acc =
              rank_accuracy(exact_phi[static_cast<std::size_t>(r)], attr.phi);
          rec.faithfulness = faithfulness(binding, attr.phi);
          rec.monotonicity = monotonicity(binding, attr.phi);
          report.metrics.push_back(std::move(rec));
        }
        report.value_calls[cell_key(method, n, master)] = cell_calls;
      }
    }
  }

  // Aggregates pool instances and seeds per (method, N); undefined metric
  // values are excluded.
  for (Method method : cfg.methods) {
    for (std::int64_t n : cfg.budgets) {
      const std::string name = method_name(method);
      const auto collect = [&](auto getter) {
        std::vector<double> xs;
        for (const MetricRecord& rec : report.metrics) {
          if (rec.method != name || rec.budget_n != n) continue;
          const double v = getter(rec);
          if (metric_defined(v)) xs.push_back(v);
        }
        return xs;
      };
      const auto push = [&](const std::string& metric,
                            const std::vector<double>& xs) {
        if (xs.empty()) return;
        const double mean =
            std::accumulate(xs.begin(), xs.end(), 0.0) /
            static_cast<double>(xs.size());
        report.aggregates.push_back({name, n, metric, mean,
                                     sample_stddev(xs, mean),
                                     static_cast<std::int64_t>(xs.size())});
      };
      push("ae", collect([](const MetricRecord& r) { return r.ae; }));
      push("acc", collect([](const MetricRecord& r) { return r.acc; }));
      push("faithfulness",
           collect([](const MetricRecord& r) { return r.faithfulness; }));
      push("monotonicity",
           collect([](const MetricRecord& r) { return r.monotonicity; }));
    }
  }

  if (cfg.with_throughput) {
    report.throughput = measure_throughput(cfg);
  }

  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    const std::filesystem::path dir(cfg.out_dir);

    const std::string exact_csv = exact_to_csv(report.exact, data.feature_names);
    const std::string attr_csv =
        attributions_to_csv(report.attributions, data.feature_names);
    const std::string metrics_csv = metrics_to_csv(report.metrics);
    const std::string aggregates_csv = aggregates_to_csv(report.aggregates);
    write_file_atomic((dir / "exact.csv").string(), exact_csv);
    write_file_atomic((dir / "attributions.csv").string(), attr_csv);
    write_file_atomic((dir / "metrics.csv").string(), metrics_csv);
    write_file_atomic((dir / "aggregates.csv").string(), aggregates_csv);
    if (cfg.with_throughput) {
      write_file_atomic((dir / "throughput.csv").string(),
                        throughput_to_csv(report.throughput, host_description()));
    }

    // Manifest goes last; it embeds the config, the seeds and the hashes of
    // every non-timing output, so a rerun can be checked byte for byte.
    nlohmann::json manifest;
    manifest["config"] = nlohmann::json::parse(bench_config_to_json_string(cfg));
    manifest["seeds"] = cfg.seeds;
    manifest["host"] = host_description();
    manifest["kernel_loop_averaging"] = "attributions";
    char hex[32];
    const auto hash_hex = [&hex](const std::string& bytes) {
      std::snprintf(hex, sizeof(hex), "%016llx",
                    static_cast<unsigned long long>(fnv1a64(bytes)));
      return std::string(hex);
    };
    manifest["outputs"] = {
        {"exact.csv", hash_hex(exact_csv)},
        {"attributions.csv", hash_hex(attr_csv)},
        {"metrics.csv", hash_hex(metrics_csv)},
        {"aggregates.csv", hash_hex(aggregates_csv)},
    };
    manifest["config_hash"] = hash_hex(bench_config_to_json_string(cfg));
    manifest["cell_errors"] = report.cell_errors;
    manifest["value_calls"] = report.value_calls;
    write_file_atomic((dir / "manifest.json").string(), manifest.dump(2) + "\n");
  }

  return report;
}

std::vector<ThroughputRecord> measure_throughput(const BenchConfig& cfg) {
  validate_config(cfg);
  const BoundDataset data = load_bound_dataset(
      cfg.model_path, cfg.dataset_path, cfg.groups_path, cfg.references_path,
      cfg.label_column, cfg.ref_policy_override, cfg.instance_limit);
  const int n_test = static_cast<int>(data.instances.rows());
  const std::uint64_t master = cfg.seeds.front();

  std::vector<ThroughputRecord> records;
  for (Method method : cfg.methods) {
    for (std::int64_t n : cfg.budgets) {
      // Features processed consecutively, one instance after another, on a
      // single thread.
      const auto start = std::chrono::steady_clock::now();
      bool failed = false;
      for (int r = 0; r < n_test && !failed; ++r) {
        try {
          (void)run_cell_instance(data.bind(r), method, n, master, r);
        } catch (const Error&) {
          failed = true;
        }
      }
      const auto stop = std::chrono::steady_clock::now();
      if (failed) continue;
      ThroughputRecord rec;
      rec.method = method_name(method);
      rec.budget_n = n;
      rec.n_test = n_test;
      rec.t_total = std::chrono::duration<double>(stop - start).count();
      rec.throughput = rec.t_total > 0.0
                           ? static_cast<double>(n_test) / rec.t_total
                           : 0.0;
      records.push_back(rec);
    }
  }
  return records;
}

BenchConfig bench_config_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw_error(ErrorKind::kConfig, "cannot open bench config: " + path);
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw_error(ErrorKind::kParse, path + ": " + e.what());
  }

  BenchConfig cfg;
  try {
    cfg.dataset_path = doc.at("dataset").get<std::string>();
    cfg.groups_path = doc.at("groups").get<std::string>();
    cfg.model_path = doc.at("model").get<std::string>();
    cfg.references_path = doc.value("references", std::string{});
    cfg.label_column = doc.value("label_column", std::string{});
    for (const auto& name : doc.at("methods")) {
      cfg.methods.push_back(method_from_name(name.get<std::string>()));
    }
    cfg.budgets = doc.at("budgets").get<std::vector<std::int64_t>>();
    cfg.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
    cfg.instance_limit = doc.value("instance_limit", 0);
    cfg.out_dir = doc.value("out_dir", std::string{});
    cfg.threads = doc.value("threads", 1);
    cfg.with_throughput = doc.value("throughput", true);
    if (doc.contains("reference_policy")) {
      const std::string policy = doc.at("reference_policy").get<std::string>();
      if (policy == "mean") {
        cfg.ref_policy_override = ReferencePolicy::kMean;
      } else if (policy == "mode") {
        cfg.ref_policy_override = ReferencePolicy::kMode;
      } else if (policy != "auto") {
        throw_error(ErrorKind::kConfig,
                    "reference_policy must be mean, mode or auto");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw_error(ErrorKind::kConfig, path + ": " + e.what());
  }
  return cfg;
}

std::string bench_config_to_json_string(const BenchConfig& cfg) {
  nlohmann::json doc;
  doc["dataset"] = cfg.dataset_path;
  doc["groups"] = cfg.groups_path;
  doc["model"] = cfg.model_path;
  doc["references"] = cfg.references_path;
  doc["label_column"] = cfg.label_column;
  doc["methods"] = nlohmann::json::array();
  for (Method m : cfg.methods) doc["methods"].push_back(method_name(m));
  doc["budgets"] = cfg.budgets;
  doc["seeds"] = cfg.seeds;
  doc["instance_limit"] = cfg.instance_limit;
  doc["out_dir"] = cfg.out_dir;
  doc["threads"] = cfg.threads;
  doc["throughput"] = cfg.with_throughput;
  if (cfg.ref_policy_override) {
    doc["reference_policy"] =
        *cfg.ref_policy_override == ReferencePolicy::kMean ? "mean" : "mode";
  } else {
    doc["reference_policy"] = "auto";
  }
  return doc.dump(2) + "\n";
}

EvalReport report_from_files(const std::string& exact_csv,
                             const std::string& estimates_csv,
                             const BoundDataset& data) {
  const int m = data.feature_count();
  std::map<std::string, int> feature_index;
  for (int i = 0; i < m; ++i) feature_index[data.feature_names[i]] = i;

  // instance -> exact phi
  std::map<int, std::vector<double>> exact;
  {
    const CsvTable table = read_csv(exact_csv);
    if (table.header.size() < 3) {
      throw_error(ErrorKind::kParse,
                  exact_csv + ": expected instance_id,feature,phi");
    }
    for (const auto& row : table.rows) {
      const int instance = std::stoi(row[0]);
      auto& phi = exact[instance];
      phi.resize(static_cast<std::size_t>(m), 0.0);
      const auto it = feature_index.find(row[1]);
      if (it == feature_index.end()) {
        throw_error(ErrorKind::kParse,
                    exact_csv + ": unknown feature \"" + row[1] + "\"");
      }
      phi[static_cast<std::size_t>(it->second)] = std::stod(row[2]);
    }
  }

  // (instance, method, n, seed) -> estimated phi
  struct Key {
    int instance;
    std::string method;
    std::int64_t n;
    std::uint64_t seed;
    bool operator<(const Key& o) const {
      return std::tie(instance, method, n, seed) <
             std::tie(o.instance, o.method, o.n, o.seed);
    }
  };
  std::map<Key, std::vector<double>> estimates;
  {
    const CsvTable table = read_csv(estimates_csv);
    if (table.header.size() < 6) {
      throw_error(
          ErrorKind::kParse,
          estimates_csv +
              ": expected instance_id,feature_name,phi_hat,method,n,seed");
    }
    for (const auto& row : table.rows) {
      const Key key{std::stoi(row[0]), row[3], std::stoll(row[4]),
                    std::stoull(row[5])};
      auto& phi = estimates[key];
      phi.resize(static_cast<std::size_t>(m), 0.0);
      const auto it = feature_index.find(row[1]);
      if (it == feature_index.end()) {
        throw_error(ErrorKind::kParse,
                    estimates_csv + ": unknown feature \"" + row[1] + "\"");
      }
      phi[static_cast<std::size_t>(it->second)] = std::stod(row[2]);
    }
  }

  EvalReport report;
  for (const auto& [key, phi] : estimates) {
    const auto oracle = exact.find(key.instance);
    if (oracle == exact.end()) {
      throw_error(ErrorKind::kConfig,
                  "exact attributions are missing instance " +
                      std::to_string(key.instance));
    }
    if (key.instance < 0 || key.instance >= data.instances.rows()) {
      throw_error(ErrorKind::kConfig,
                  "instance " + std::to_string(key.instance) +
                      " is outside the bound dataset");
    }
    const ValueFunctionBinding binding = data.bind(key.instance);
    MetricRecord rec;
    rec.instance_id = key.instance;
    rec.method = key.method;
    rec.budget_n = key.n;
    rec.seed = key.seed;
    rec.ae = abs_error(oracle->second, phi);
    rec.acc = rank_accuracy(oracle->second, phi);
    rec.faithfulness = faithfulness(binding, phi);
    rec.monotonicity = monotonicity(binding, phi);
    report.metrics.push_back(std::move(rec));
  }

  // Aggregates per (method, N) over instances and seeds.
  std::map<std::pair<std::string, std::int64_t>, bool> cells;
  for (const MetricRecord& rec : report.metrics) {
    cells[{rec.method, rec.budget_n}] = true;
  }
  for (const auto& [cell, unused] : cells) {
    (void)unused;
    const auto collect = [&](auto getter) {
      std::vector<double> xs;
      for (const MetricRecord& rec : report.metrics) {
        if (rec.method != cell.first || rec.budget_n != cell.second) continue;
        const double v = getter(rec);
        if (metric_defined(v)) xs.push_back(v);
      }
      return xs;
    };
    const auto push = [&](const std::string& metric,
                          const std::vector<double>& xs) {
      if (xs.empty()) return;
      const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) /
                          static_cast<double>(xs.size());
      report.aggregates.push_back({cell.first, cell.second, metric, mean,
                                   sample_stddev(xs, mean),
                                   static_cast<std::int64_t>(xs.size())});
    };
    push("ae", collect([](const MetricRecord& r) { return r.ae; }));
    push("acc", collect([](const MetricRecord& r) { return r.acc; }));
    push("faithfulness",
         collect([](const MetricRecord& r) { return r.faithfulness; }));
    push("monotonicity",
         collect([](const MetricRecord& r) { return r.monotonicity; }));
  }
  return report;
}

std::string exact_to_csv(const std::vector<AttributionRow>& rows,
                         const std::vector<std::string>& feature_names) {
  std::ostringstream out;
  out << "instance_id,feature,phi\n";
  for (const AttributionRow& row : rows) {
    for (std::size_t i = 0; i < row.phi.size(); ++i) {
      out << row.instance_id << ',' << feature_names[i] << ','
          << format_double(row.phi[i]) << '\n';
    }
  }
  return out.str();
}

std::string attributions_to_csv(const std::vector<AttributionRow>& rows,
                                const std::vector<std::string>& feature_names) {
  std::ostringstream out;
  out << "instance_id,feature_name,phi_hat,method,n,seed\n";
  for (const AttributionRow& row : rows) {
    for (std::size_t i = 0; i < row.phi.size(); ++i) {
      out << row.instance_id << ',' << feature_names[i] << ','
          << format_double(row.phi[i]) << ',' << row.method << ','
          << row.budget_n << ',' << row.seed << '\n';
    }
  }
  return out.str();
}

std::string metrics_to_csv(const std::vector<MetricRecord>& records) {
  std::ostringstream out;
  out << "instance_id,method,budget_n,seed,ae,acc,faithfulness,monotonicity\n";
  for (const MetricRecord& rec : records) {
    out << rec.instance_id << ',' << rec.method << ',' << rec.budget_n << ','
        << rec.seed << ',' << format_double(rec.ae) << ','
        << format_double(rec.acc) << ',' << format_double(rec.faithfulness)
        << ',' << format_double(rec.monotonicity) << '\n';
  }
  return out.str();
}

std::string aggregates_to_csv(const std::vector<AggregateRecord>& records) {
  std::ostringstream out;
  out << "method,budget_n,metric,mean,stddev,count\n";
  for (const AggregateRecord& rec : records) {
    out << rec.method << ',' << rec.budget_n << ',' << rec.metric << ','
        << format_double(rec.mean) << ',' << format_double(rec.stddev) << ','
        << rec.count << '\n';
  }
  return out.str();
}

std::string throughput_to_csv(const std::vector<ThroughputRecord>& records,
                              const std::string& host) {
  std::ostringstream out;
  out << "method,budget_n,n_test,t_total_s,throughput_per_s,host\n";
  for (const ThroughputRecord& rec : records) {
    out << rec.method << ',' << rec.budget_n << ',' << rec.n_test << ','
        << format_double(rec.t_total) << ',' << format_double(rec.throughput)
        << ',' << host << '\n';
  }
  return out.str();
}

std::string host_description() {
  std::string cpu = "unknown-cpu";
  std::ifstream cpuinfo("/proc/cpuinfo");
  std::string line;
  while (std::getline(cpuinfo, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        cpu = line.substr(colon + 2);
      }
      break;
    }
  }
  std::replace(cpu.begin(), cpu.end(), ',', ';');
  return cpu + " (" + std::to_string(std::thread::hardware_concurrency()) +
         " hw threads)";
}

}  // namespace shapbench
