#include "shapbench/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "shapbench/csv.hpp"
#include "shapbench/errors.hpp"
#include "shapbench/mlp.hpp"
#include "shapbench/model_io.hpp"
#include "shapbench/quadratic.hpp"
#include "shapbench/rng.hpp"

namespace shapbench {

const char* fixture_kind_name(FixtureKind k) {
  switch (k) {
    case FixtureKind::kAffine: return "affine";
    case FixtureKind::kQuadratic: return "quadratic";
    case FixtureKind::kTanhMlp: return "tanh_mlp";
  }
  return "?";
}

FixtureKind fixture_kind_from_name(const std::string& name) {
  if (name == "affine") return FixtureKind::kAffine;
  if (name == "quadratic") return FixtureKind::kQuadratic;
  if (name == "tanh_mlp") return FixtureKind::kTanhMlp;
  throw_error(ErrorKind::kConfig, "unknown fixture kind: \"" + name + "\"");
}

namespace {

std::unique_ptr<DifferentiableModel> build_model(const FixtureSpec& spec,
                                                 Rng& rng) {
  const int m = spec.m;
  switch (spec.kind) {
    case FixtureKind::kAffine: {
      Layer layer;
      layer.activation = Activation::kIdentity;
      layer.weight.resize(1, m);
      for (int c = 0; c < m; ++c) layer.weight(0, c) = rng.next_uniform(-1.0, 1.0);
      layer.bias = Eigen::VectorXd::Constant(1, rng.next_uniform(-0.5, 0.5));
      return std::make_unique<MlpModel>(m, Head::kScalar,
                                        std::vector<Layer>{std::move(layer)});
    }
    case FixtureKind::kQuadratic: {
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) {
        a(i, i) = rng.next_uniform(-0.5, 0.5);
        for (int j = i + 1; j < m; ++j) {
          a(i, j) = rng.next_uniform(-0.75, 0.75);
        }
      }
      Eigen::VectorXd b(m);
      for (int i = 0; i < m; ++i) b(i) = rng.next_uniform(-1.0, 1.0);
      return std::make_unique<QuadraticModel>(std::move(a), std::move(b),
                                              rng.next_uniform(-0.5, 0.5));
    }
    case FixtureKind::kTanhMlp: {
      // Two tanh layers plus a linear read-out. The first layer is
      // pairwise-local (unit h reads inputs h and h+1 mod m), so interaction
      // strength concentrates on a few feature pairs the way trained tabular
      // models behave, instead of spreading uniformly; the second layer mixes
      // globally at a smaller scale.
      Layer pairs;
      pairs.activation = Activation::kTanh;
      pairs.weight = Eigen::MatrixXd::Zero(m, m);
      pairs.bias.resize(m);
      for (int h = 0; h < m; ++h) {
        pairs.weight(h, h) = rng.next_uniform(-1.8, 1.8);
        pairs.weight(h, (h + 1) % m) = rng.next_uniform(-1.8, 1.8);
        pairs.bias(h) = rng.next_uniform(-0.1, 0.1);
      }
      Layer mix;
      mix.activation = Activation::kTanh;
      mix.weight.resize(m, m);
      mix.bias.resize(m);
      for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
          mix.weight(r, c) = rng.next_uniform(-0.15, 0.15);
        }
        mix.bias(r) = rng.next_uniform(-0.1, 0.1);
      }
      Layer head;
      head.activation = Activation::kIdentity;
      head.weight.resize(1, m);
      for (int c = 0; c < m; ++c) head.weight(0, c) = rng.next_uniform(-1.0, 1.0);
      head.bias = Eigen::VectorXd::Zero(1);
      return std::make_unique<MlpModel>(
          m, Head::kScalar, std::vector<Layer>{pairs, mix, head});
    }
  }
  throw_error(ErrorKind::kConfig, "unknown fixture kind");
}

}  // namespace

FixtureData build_fixture(const FixtureSpec& spec) {
  if (spec.m < 2 || spec.m > 12) {
    throw_error(ErrorKind::kArgument, "fixture feature count must be in [2, 12]");
  }
  if (spec.rows < 2) {
    throw_error(ErrorKind::kArgument, "fixture needs at least 2 rows");
  }

  Rng model_rng(mix_seed(spec.seed, 0x6d6f646c));
  Rng data_rng(mix_seed(spec.seed, 0x64617461));

  auto model = build_model(spec, model_rng);

  // Sign-valued instances for the tanh fixture give every feature the same
  // deviation magnitude, mirroring one-hot tabular data; the other kinds use
  // continuous draws.
  Eigen::MatrixXd instances(spec.rows, spec.m);
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.m; ++c) {
      instances(r, c) = spec.kind == FixtureKind::kTanhMlp
                            ? (data_rng.next_u64() & 1 ? 1.0 : -1.0)
                            : data_rng.next_uniform(-1.0, 1.0);
    }
  }

  // Balanced binary labels: above/below the median model value.
  Eigen::VectorXd values(spec.rows);
  for (int r = 0; r < spec.rows; ++r) values(r) = model->forward(instances.row(r));
  std::vector<double> sorted(values.data(), values.data() + values.size());
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];

  std::vector<std::string> names;
  for (int c = 0; c < spec.m; ++c) names.push_back("x" + std::to_string(c));
  names.push_back("label");
  Eigen::MatrixXd table(spec.rows, spec.m + 1);
  table.leftCols(spec.m) = instances;
  for (int r = 0; r < spec.rows; ++r) {
    table(r, spec.m) = values(r) > median ? 1.0 : 0.0;
  }

  FixtureData fixture{
      std::move(model),
      Dataset(std::move(names), std::move(table)),
      std::move(instances),
      FeatureGroups::scalar(spec.m),
      {},
  };
  fixture.reference = compute_reference(
      fixture.instances,
      std::vector<ReferencePolicy>(static_cast<std::size_t>(spec.m),
                                   ReferencePolicy::kMean));
  return fixture;
}

ValueFunctionBinding bind_row(const FixtureData& fixture, int row) {
  return ValueFunctionBinding(*fixture.model, fixture.instances.row(row),
                              fixture.reference, fixture.groups);
}

std::string make_fixture(const FixtureSpec& spec, const std::string& out_dir) {
  const FixtureData fixture = build_fixture(spec);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);

  std::ostringstream data;
  const auto& names = fixture.dataset.column_names();
  for (std::size_t c = 0; c < names.size(); ++c) {
    data << (c ? "," : "") << names[c];
  }
  data << '\n';
  for (int r = 0; r < fixture.dataset.rows(); ++r) {
    for (int c = 0; c < fixture.dataset.cols(); ++c) {
      data << (c ? "," : "") << format_double(fixture.dataset.values()(r, c));
    }
    data << '\n';
  }
  write_file_atomic((dir / "dataset.csv").string(), data.str());

  if (const auto* mlp = dynamic_cast<const MlpModel*>(fixture.model.get())) {
    save_model(*mlp, (dir / "model.json").string());
  } else {
    save_model(*dynamic_cast<const QuadraticModel*>(fixture.model.get()),
               (dir / "model.json").string());
  }

  write_file_atomic((dir / "groups.json").string(),
                    fixture.groups.to_json_string());

  std::vector<std::string> feature_names(names.begin(), names.end() - 1);
  write_file_atomic((dir / "references.csv").string(),
                    fixture.reference.to_csv_string(feature_names));

  nlohmann::json meta;
  meta["kind"] = fixture_kind_name(spec.kind);
  meta["m"] = spec.m;
  meta["seed"] = spec.seed;
  meta["rows"] = spec.rows;
  write_file_atomic((dir / "fixture.json").string(), meta.dump(2) + "\n");

  return out_dir;
}

}  // namespace shapbench
