// Acceptance suite. Runs every criterion at its stated tolerance and prints
// one pass/fail line each; exits non-zero if any fail.
//
// Usage: shapbench_acceptance [fixture_dir]   (default: data/fixtures)

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "shapbench/baselines.hpp"
#include "shapbench/bench.hpp"
#include "shapbench/exact.hpp"
#include "shapbench/fixture.hpp"
#include "shapbench/metrics.hpp"
#include "shapbench/mlp.hpp"
#include "shapbench/quadratic.hpp"
#include "shapbench/rng.hpp"
#include "shapbench/shear.hpp"

using namespace shapbench;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& message) {
    if (!condition && ok) {
      ok = false;
      detail = message;
    }
  }
  void note(const std::string& message) {
    if (ok) detail = message;
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return buf;
}

int g_failures = 0;

void criterion(int id, const std::string& name,
               const std::function<void(Check&)>& body) {
  Check check;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.ok = false;
    check.detail = std::string("exception: ") + e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::printf("[%s] %2d. %s (%.2fs)%s%s\n", check.ok ? "PASS" : "FAIL", id,
              name.c_str(), elapsed, check.detail.empty() ? "" : " -- ",
              check.detail.c_str());
  std::fflush(stdout);
  if (!check.ok) ++g_failures;
}

// ---------------------------------------------------------------------------
// Shared generators

MlpModel random_tanh_model(const std::vector<int>& dims, Rng& rng,
                           double scale = 1.5) {
  std::vector<Layer> layers;
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
    Layer layer;
    layer.activation =
        k + 2 == dims.size() ? Activation::kIdentity : Activation::kTanh;
    const double bound = scale / std::sqrt(static_cast<double>(dims[k]));
    layer.weight.resize(dims[k + 1], dims[k]);
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
        layer.weight(r, c) = rng.next_uniform(-bound, bound);
      }
    }
    layer.bias.resize(dims[k + 1]);
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) {
      layer.bias(r) = rng.next_uniform(-0.2, 0.2);
    }
    layers.push_back(std::move(layer));
  }
  return MlpModel(dims.front(), Head::kScalar, std::move(layers));
}

Eigen::VectorXd random_vector(int n, Rng& rng) {
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = rng.next_uniform(-1.0, 1.0);
  return x;
}

ReferenceVector reference_of(const Eigen::VectorXd& values) {
  ReferenceVector ref;
  ref.values = values;
  ref.policies.assign(static_cast<std::size_t>(values.size()),
                      ReferencePolicy::kMean);
  return ref;
}

QuadraticModel random_quadratic(int m, Rng& rng) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    a(i, i) = rng.next_uniform(-0.5, 0.5);
    for (int j = i + 1; j < m; ++j) a(i, j) = rng.next_uniform(-1.0, 1.0);
  }
  return QuadraticModel(a, random_vector(m, rng), rng.next_uniform(-0.5, 0.5));
}

QuadraticModel product_model() {
  Eigen::MatrixXd a(2, 2);
  a << 0.0, 1.0, 0.0, 0.0;
  return QuadraticModel(a, Eigen::VectorXd::Zero(2), 0.0);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct CorpusStats {
  std::vector<std::vector<double>> exact;
  BoundDataset data;
};

BenchConfig fixture_bench_config(const std::filesystem::path& fixture_dir) {
  BenchConfig cfg;
  cfg.dataset_path = (fixture_dir / "dataset.csv").string();
  cfg.groups_path = (fixture_dir / "groups.json").string();
  cfg.model_path = (fixture_dir / "model.json").string();
  cfg.references_path = (fixture_dir / "references.csv").string();
  cfg.label_column = "label";
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path fixture_root =
      argc > 1 ? argv[1] : "data/fixtures";
  const std::filesystem::path tanh_fixture = fixture_root / "tanh_m8";
  if (!std::filesystem::exists(tanh_fixture / "model.json")) {
    std::fprintf(stderr, "missing committed fixture: %s\n",
                 tanh_fixture.string().c_str());
    return 2;
  }

  // 100 random bindings, M cycling through 2..10, reused by criteria 1 and 2.
  std::vector<MlpModel> corpus_models;
  std::vector<Eigen::VectorXd> corpus_x, corpus_ref;
  {
    Rng rng(0xACC0);
    for (int t = 0; t < 100; ++t) {
      const int m = 2 + t % 9;
      corpus_models.push_back(random_tanh_model({m, 12, 12, 1}, rng, 2.0));
      corpus_x.push_back(random_vector(m, rng));
      corpus_ref.push_back(random_vector(m, rng));
    }
  }
  const auto corpus_binding = [&](int t) {
    const int m = corpus_models[static_cast<std::size_t>(t)].input_dim();
    return ValueFunctionBinding(corpus_models[static_cast<std::size_t>(t)],
                                corpus_x[static_cast<std::size_t>(t)],
                                reference_of(corpus_ref[static_cast<std::size_t>(t)]),
                                FeatureGroups::scalar(m));
  };

  std::vector<Attribution> corpus_exact(100);

  criterion(1, "efficiency identity on 100 random fixtures", [&](Check& c) {
    const auto start = std::chrono::steady_clock::now();
    for (int t = 0; t < 100; ++t) {
      const ValueFunctionBinding binding = corpus_binding(t);
      corpus_exact[static_cast<std::size_t>(t)] = exact_shapley(binding);
      const Attribution& attr = corpus_exact[static_cast<std::size_t>(t)];
      const double total =
          std::accumulate(attr.phi.begin(), attr.phi.end(), 0.0);
      const double expected =
          binding.value(binding.full_coalition()) -
          binding.value(Coalition::empty(binding.feature_count()));
      c.require(std::abs(total - expected) <= 1e-9,
                "efficiency gap " + std::to_string(total - expected) +
                    " at fixture " + std::to_string(t));
    }
    const double elapsed = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    c.require(elapsed < 5.0, "took " + std::to_string(elapsed) + "s");
    c.note("max |sum(phi) - (v(U) - v(empty))| within 1e-9 on all 100");
  });

  criterion(2, "shear at full budget matches the oracle", [&](Check& c) {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const ValueFunctionBinding binding = corpus_binding(t);
      const int m = binding.feature_count();
      const Attribution est =
          shear_explain(binding, std::int64_t{1} << m, 0xF00D + t);
      for (int i = 0; i < m; ++i) {
        const double gap = std::abs(
            est.phi[static_cast<std::size_t>(i)] -
            corpus_exact[static_cast<std::size_t>(t)]
                .phi[static_cast<std::size_t>(i)]);
        worst = std::max(worst, gap);
      }
    }
    c.require(worst <= 1e-9, "componentwise gap " + sci(worst));
    const double elapsed = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    c.require(elapsed < 30.0, "took " + std::to_string(elapsed) + "s");
    c.note("worst gap " + sci(worst));
  });

  // Quadratic suite shared by criteria 3 and 4.
  struct QuadCase {
    QuadraticModel model;
    Eigen::VectorXd x, ref;
  };
  std::vector<QuadCase> quads;

  criterion(3, "curvature bound holds on quadratic games", [&](Check& c) {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(0xB00);
    const int m = 6;
    for (int game = 0; game < 20; ++game) {
      const QuadraticModel model = random_quadratic(m, rng);
      const Eigen::VectorXd x = random_vector(m, rng);
      const Eigen::VectorXd ref = random_vector(m, rng);
      quads.push_back({model, x, ref});
      const ValueFunctionBinding binding(model, x, reference_of(ref),
                                         FeatureGroups::scalar(m));
      const Attribution full = exact_shapley(binding);
      const std::vector<double> dev = binding.feature_deviations();
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          if (i == j) continue;
          const Coalition coop =
              Coalition::universe(m).without(i).without(j);
          const double gap =
              std::abs(full.phi[static_cast<std::size_t>(i)] -
                       exact_shapley_restricted(binding, i, coop));
          const double bound = epsilon_bound(binding, i, j) *
                               dev[static_cast<std::size_t>(i)] *
                               dev[static_cast<std::size_t>(j)];
          c.require(gap <= bound + 1e-9,
                    "game " + std::to_string(game) + " pair (" +
                        std::to_string(i) + "," + std::to_string(j) +
                        "): gap " + sci(gap) + " > bound " + sci(bound));
        }
      }
    }

    // The product game attains the bound exactly.
    const QuadraticModel prod = product_model();
    const ValueFunctionBinding pb(prod, Eigen::Vector2d(1.0, 1.0),
                                  reference_of(Eigen::Vector2d(0.0, 0.0)),
                                  FeatureGroups::scalar(2));
    const double gap =
        std::abs(exact_shapley(pb).phi[0] -
                 exact_shapley_restricted(pb, 0, Coalition::empty(2)));
    const double bound = epsilon_bound(pb, 0, 1) * 1.0 * 1.0;
    c.require(std::abs(gap - bound) <= 1e-12,
              "product game: |gap - bound| = " + sci(gap - bound));
    const double elapsed = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    c.require(elapsed < 60.0, "took " + std::to_string(elapsed) + "s");
    c.note("all 600 ordered pairs bounded; product game tight");
  });

  criterion(4, "chain-rule identity is exact on quadratics", [&](Check& c) {
    double worst = 0.0;
    for (const QuadCase& q : quads) {
      const int m = q.model.input_dim();
      const ValueFunctionBinding binding(q.model, q.x, reference_of(q.ref),
                                         FeatureGroups::scalar(m));
      const Attribution full = exact_shapley(binding);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          if (i == j) continue;
          const Coalition coop =
              Coalition::universe(m).without(i).without(j);
          const double gap = full.phi[static_cast<std::size_t>(i)] -
                             exact_shapley_restricted(binding, i, coop);
          worst =
              std::max(worst, std::abs(gap - delta_term(binding, i, j)));
        }
      }
    }
    c.require(!quads.empty(), "quadratic suite missing");
    c.require(worst <= 1e-9, "identity residual " + sci(worst));
    c.note("max |gap - delta| = " + sci(worst));
  });

  criterion(5, "chain-rule weights sum to 1 for m in 2..12", [&](Check& c) {
    for (int m = 2; m <= 12; ++m) {
      const double total = delta_weight_total(m);
      c.require(std::abs(total - 1.0) <= 1e-12,
                "m=" + std::to_string(m) + ": " + std::to_string(total));
    }
  });

  criterion(6, "baselines recover the oracle under full enumeration", [&](Check& c) {
    Rng rng(0xBA5E);
    const int m = 6;
    const MlpModel model = random_tanh_model({m, 10, 1}, rng, 2.0);
    const ValueFunctionBinding binding(model, random_vector(m, rng),
                                       reference_of(random_vector(m, rng)),
                                       FeatureGroups::scalar(m));
    const Attribution exact = exact_shapley(binding);

    const auto check_close = [&](const Attribution& got, const char* label) {
      for (int i = 0; i < m; ++i) {
        c.require(std::abs(got.phi[static_cast<std::size_t>(i)] -
                           exact.phi[static_cast<std::size_t>(i)]) <= 1e-6,
                  std::string(label) + " off at feature " + std::to_string(i));
      }
    };

    // Kernel regression over every proper coalition.
    std::vector<Coalition> all;
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << m); ++mask) {
      all.emplace_back(mask, m);
    }
    check_close(kernel_shap_from_coalitions(binding, all), "kernel-shap");

    // Pair-sampling layout: every complement pair exactly once.
    std::vector<Coalition> paired;
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << m); ++mask) {
      const Coalition s(mask, m);
      if (s.contains(0)) {
        paired.push_back(s);
        paired.push_back(s.complement());
      }
    }
    check_close(kernel_shap_from_coalitions(binding, paired), "ks-pair");

    // Welford pass over every proper coalition.
    check_close(ks_welford_enumerated(binding), "ks-welford");

    // Every permutation once.
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
      perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    check_close(permutation_sampling_enumerated(binding, perms),
                "permutation-sampling");
    c.note("ks, ks-pair, ks-wf, ps all within 1e-6");
  });

  criterion(7, "analytic derivatives match finite differences", [&](Check& c) {
    Rng rng(0xD1FF);
    double worst_grad = 0.0, worst_hess = 0.0;
    for (int t = 0; t < 100; ++t) {
      const int m = 2 + static_cast<int>(rng.next_index(7));
      const MlpModel model = random_tanh_model({m, 12, 12, 1}, rng, 1.5);
      const Eigen::VectorXd x = random_vector(m, rng);

      const Eigen::VectorXd grad = model.input_gradient(x);
      Eigen::VectorXd fd_grad(m);
      for (int i = 0; i < m; ++i) {
        Eigen::VectorXd hi = x, lo = x;
        hi(i) += 1e-5;
        lo(i) -= 1e-5;
        fd_grad(i) = (model.forward(hi) - model.forward(lo)) / 2e-5;
      }
      worst_grad = std::max(
          worst_grad,
          (grad - fd_grad).norm() / std::max(fd_grad.norm(), 1e-12));

      const Eigen::MatrixXd hess = model.input_cross_hessian(x);
      Eigen::MatrixXd fd_hess(m, m);
      for (int j = 0; j < m; ++j) {
        Eigen::VectorXd hi = x, lo = x;
        hi(j) += 1e-4;
        lo(j) -= 1e-4;
        fd_hess.col(j) =
            (model.input_gradient(hi) - model.input_gradient(lo)) / 2e-4;
      }
      worst_hess = std::max(
          worst_hess,
          (hess - fd_hess).norm() / std::max(fd_hess.norm(), 1e-12));
      c.require((hess - hess.transpose()).norm() <=
                    1e-12 * std::max(1.0, hess.norm()),
                "asymmetric curvature at model " + std::to_string(t));
    }
    c.require(worst_grad < 1e-6, "gradient rel err " + sci(worst_grad));
    c.require(worst_hess < 1e-4, "curvature rel err " + sci(worst_hess));
    c.note("grad rel err " + sci(worst_grad) + ", curvature rel err " +
           sci(worst_hess));
  });

  // Committed fixture corpus, shared by criteria 8-10.
  const BoundDataset fixture = load_bound_dataset(
      (tanh_fixture / "model.json").string(),
      (tanh_fixture / "dataset.csv").string(),
      (tanh_fixture / "groups.json").string(),
      (tanh_fixture / "references.csv").string(), "label", std::nullopt, 0);
  const int fm = fixture.feature_count();
  const int n_test = static_cast<int>(fixture.instances.rows());
  std::vector<std::vector<double>> fixture_exact(
      static_cast<std::size_t>(n_test));
  for (int r = 0; r < n_test; ++r) {
    fixture_exact[static_cast<std::size_t>(r)] =
        exact_shapley(fixture.bind(r)).phi;
  }
  const std::vector<std::uint64_t> sweep_seeds = {101, 202, 303, 404, 505};

  criterion(8, "shear beats ps and ks at matched budget N=16", [&](Check& c) {
    const auto start = std::chrono::steady_clock::now();
    double ae_shear = 0, ae_ps = 0, ae_ks = 0;
    double acc_shear = 0, acc_ps = 0, acc_ks = 0;
    int count = 0;
    for (const std::uint64_t master : sweep_seeds) {
      for (int r = 0; r < n_test; ++r) {
        const ValueFunctionBinding binding = fixture.bind(r);
        const auto& oracle = fixture_exact[static_cast<std::size_t>(r)];

        const Attribution shear = run_method(
            binding, Method::kShear, 16, cell_seed(master, Method::kShear, 16, r));
        const Attribution ps = run_method(
            binding, Method::kPs, 16, cell_seed(master, Method::kPs, 16, r));
        const Attribution ks = run_kernel_looped(
            binding, Method::kKs, 16, cell_seed(master, Method::kKs, 16, r), fm);

        ae_shear += abs_error(oracle, shear.phi);
        ae_ps += abs_error(oracle, ps.phi);
        ae_ks += abs_error(oracle, ks.phi);
        acc_shear += rank_accuracy(oracle, shear.phi);
        acc_ps += rank_accuracy(oracle, ps.phi);
        acc_ks += rank_accuracy(oracle, ks.phi);
        ++count;
      }
    }
    ae_shear /= count; ae_ps /= count; ae_ks /= count;
    acc_shear /= count; acc_ps /= count; acc_ks /= count;
    c.require(ae_shear < ae_ps, "mean AE: shear " + std::to_string(ae_shear) +
                                    " !< ps " + std::to_string(ae_ps));
    c.require(ae_shear < ae_ks, "mean AE: shear " + std::to_string(ae_shear) +
                                    " !< ks " + std::to_string(ae_ks));
    c.require(acc_shear > acc_ps, "mean ACC: shear " + std::to_string(acc_shear) +
                                      " !> ps " + std::to_string(acc_ps));
    c.require(acc_shear > acc_ks, "mean ACC: shear " + std::to_string(acc_shear) +
                                      " !> ks " + std::to_string(acc_ks));
    const double elapsed = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    c.require(elapsed < 600.0, "took " + std::to_string(elapsed) + "s");
    std::ostringstream note;
    note << "AE shear/ps/ks = " << ae_shear << "/" << ae_ps << "/" << ae_ks
         << "; ACC = " << acc_shear << "/" << acc_ps << "/" << acc_ks;
    c.note(note.str());
  });

  criterion(9, "shear mean AE is non-increasing in the budget", [&](Check& c) {
    const std::vector<std::int64_t> budgets = {4, 8, 16, 32, 64, 128, 256};
    std::vector<double> mean_ae;
    for (const std::int64_t n : budgets) {
      double ae = 0;
      int count = 0;
      for (const std::uint64_t master : sweep_seeds) {
        for (int r = 0; r < n_test; ++r) {
          const Attribution est =
              run_method(fixture.bind(r), Method::kShear, n,
                         cell_seed(master, Method::kShear, n, r));
          ae += abs_error(fixture_exact[static_cast<std::size_t>(r)], est.phi);
          ++count;
        }
      }
      mean_ae.push_back(ae / count);
    }
    std::ostringstream note;
    for (std::size_t t = 0; t < budgets.size(); ++t) {
      note << (t ? " " : "") << budgets[t] << ":" << mean_ae[t];
      if (t > 0) {
        c.require(mean_ae[t] <= mean_ae[t - 1] * 1.05,
                  "AE rose beyond 5% from N=" + std::to_string(budgets[t - 1]) +
                      " to N=" + std::to_string(budgets[t]));
      }
    }
    c.note(note.str());
  });

  criterion(10, "restricted error anti-correlates with cross-contribution",
            [&](Check& c) {
    Rng pick(999);
    std::vector<double> errs, etas;
    for (int r = 0; r < n_test; ++r) {
      const ValueFunctionBinding binding = fixture.bind(r);
      const int i = static_cast<int>(pick.next_index(fm));
      Coalition s = Coalition::empty(fm);
      while (s.size() < 3) {  // |S| = log2(16 / 2)
        const int j = static_cast<int>(pick.next_index(fm));
        if (j != i) s = s.with(j);
      }
      errs.push_back(
          std::abs(fixture_exact[static_cast<std::size_t>(r)]
                       [static_cast<std::size_t>(i)] -
                   exact_shapley_restricted(binding, i, s)));
      const CrossContribution cc = cross_contribution(binding);
      double eta_sum = 0.0;
      for (int j : s.members()) eta_sum += cc.eta(i, j);
      etas.push_back(eta_sum);
    }
    const double r = pearson(errs, etas);
    c.require(metric_defined(r), "correlation undefined");
    c.require(r < -0.2, "pearson r = " + std::to_string(r));
    c.note("pearson r = " + std::to_string(r));
  });

  criterion(11, "estimators and the bench are run-to-run deterministic",
            [&](Check& c) {
    const ValueFunctionBinding binding = fixture.bind(0);
    for (Method method : {Method::kShear, Method::kKs, Method::kKsWf,
                          Method::kKsPair, Method::kPs, Method::kAps}) {
      const Attribution a = run_method(binding, method, 16, 777);
      const Attribution b = run_method(binding, method, 16, 777);
      c.require(a.phi == b.phi && a.eval_count == b.eval_count,
                std::string("non-deterministic estimator: ") +
                    method_name(method));
    }

    const auto scratch =
        std::filesystem::temp_directory_path() / "shapbench_acceptance";
    std::filesystem::remove_all(scratch);
    BenchConfig cfg = fixture_bench_config(tanh_fixture);
    cfg.methods = {Method::kShear, Method::kPs, Method::kKs};
    cfg.budgets = {8, 16};
    cfg.seeds = {101, 202};
    cfg.instance_limit = 25;
    cfg.with_throughput = false;
    cfg.out_dir = (scratch / "run1").string();
    (void)run_bench(cfg);
    cfg.out_dir = (scratch / "run2").string();
    (void)run_bench(cfg);
    for (const char* name :
         {"exact.csv", "attributions.csv", "metrics.csv", "aggregates.csv"}) {
      const std::string first = slurp(scratch / "run1" / name);
      c.require(!first.empty(), std::string(name) + " is empty");
      c.require(first == slurp(scratch / "run2" / name),
                std::string(name) + " differs between identical runs");
    }
    std::filesystem::remove_all(scratch);
    c.note("6 estimators and 4 bench outputs byte-identical");
  });

  criterion(12, "metric identities", [&](Check& c) {
    // Top-1-only agreement at M=3.
    const double acc = rank_accuracy({3.0, 2.0, 1.0}, {3.0, 0.5, 1.0});
    c.require(std::abs(acc - 6.0 / 11.0) <= 1e-12,
              "ACC = " + std::to_string(acc));

    // Aligned / negated attributions under faithfulness.
    Rng rng(0xFA17);
    const MlpModel model = random_tanh_model({4, 8, 1}, rng, 2.0);
    const ValueFunctionBinding binding(model, random_vector(4, rng),
                                       reference_of(random_vector(4, rng)),
                                       FeatureGroups::scalar(4));
    const Coalition full = binding.full_coalition();
    const double v_full = binding.value(full);
    std::vector<double> diffs, negated;
    for (int i = 0; i < 4; ++i) {
      diffs.push_back(v_full - binding.value(full.without(i)));
      negated.push_back(-diffs.back());
    }
    c.require(std::abs(faithfulness(binding, diffs) - 1.0) <= 1e-12,
              "aligned faithfulness != 1");
    c.require(std::abs(faithfulness(binding, negated) + 1.0) <= 1e-12,
              "negated faithfulness != -1");

    // Monotonicity of a correctly ordered additive game.
    Layer layer;
    layer.activation = Activation::kIdentity;
    layer.weight.resize(1, 4);
    layer.weight << 4.0, 3.0, 2.0, 1.0;
    layer.bias = Eigen::VectorXd::Zero(1);
    const MlpModel additive(4, Head::kScalar, {layer});
    const ValueFunctionBinding ab(additive, Eigen::Vector4d(1, 1, 1, 1),
                                  reference_of(Eigen::Vector4d(0, 0, 0, 0)),
                                  FeatureGroups::scalar(4));
    const Attribution exact = exact_shapley(ab);
    c.require(std::abs(monotonicity(ab, exact.phi) - 1.0) <= 1e-12,
              "monotonicity != 1 on sorted additive game");
  });

  std::printf("%d/12 criteria passed\n", 12 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
