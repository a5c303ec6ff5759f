#include "shapbench/model_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "shapbench/csv.hpp"
#include "shapbench/errors.hpp"

namespace shapbench {

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j,
                                 const std::string& context) {
  if (!j.is_array() || j.empty()) {
    throw_error(ErrorKind::kParse, context + ": expected a non-empty 2d array");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) {
    throw_error(ErrorKind::kParse, context + ": expected a non-empty 2d array");
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows),
                    static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw_error(ErrorKind::kParse,
                  context + ": ragged row " + std::to_string(r));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) {
        throw_error(ErrorKind::kParse, context + ": non-numeric entry");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          j[r][c].get<double>();
    }
  }
  return m;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j,
                                 const std::string& context) {
  if (!j.is_array()) {
    throw_error(ErrorKind::kParse, context + ": expected an array");
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw_error(ErrorKind::kParse, context + ": non-numeric entry");
    }
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

nlohmann::json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw_error(ErrorKind::kInput, "cannot open model file: " + path);
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw_error(ErrorKind::kParse, path + ": " + e.what());
  }
}

MlpModel mlp_from_json(const nlohmann::json& doc, const std::string& path) {
  if (!doc.contains("input_dim") || !doc.contains("head") ||
      !doc.contains("layers")) {
    throw_error(ErrorKind::kParse,
                path + ": model file needs input_dim, head and layers");
  }
  const int input_dim = doc.at("input_dim").get<int>();
  const Head head = head_from_name(doc.at("head").get<std::string>());
  std::vector<Layer> layers;
  std::size_t index = 0;
  for (const auto& lj : doc.at("layers")) {
    const std::string context = path + ": layer " + std::to_string(index);
    Layer layer;
    layer.activation =
        activation_from_name(lj.at("activation").get<std::string>());
    layer.weight = matrix_from_json(lj.at("weight"), context + " weight");
    layer.bias = vector_from_json(lj.at("bias"), context + " bias");
    layers.push_back(std::move(layer));
    ++index;
  }
  return MlpModel(input_dim, head, std::move(layers));
}

}  // namespace

std::string model_to_json_string(const MlpModel& model) {
  nlohmann::json doc;
  doc["input_dim"] = model.input_dim();
  doc["head"] = head_name(model.head());
  doc["layers"] = nlohmann::json::array();
  for (const Layer& layer : model.layers()) {
    doc["layers"].push_back({{"activation", activation_name(layer.activation)},
                             {"weight", matrix_to_json(layer.weight)},
                             {"bias", vector_to_json(layer.bias)}});
  }
  return doc.dump(2) + "\n";
}

std::string model_to_json_string(const QuadraticModel& model) {
  nlohmann::json doc;
  doc["kind"] = "quadratic";
  doc["a"] = matrix_to_json(model.quad());
  doc["b"] = vector_to_json(model.lin());
  doc["c"] = model.constant();
  return doc.dump(2) + "\n";
}

void save_model(const MlpModel& model, const std::string& path) {
  write_file_atomic(path, model_to_json_string(model));
}

void save_model(const QuadraticModel& model, const std::string& path) {
  write_file_atomic(path, model_to_json_string(model));
}

MlpModel load_mlp_model(const std::string& path) {
  return mlp_from_json(parse_file(path), path);
}

std::unique_ptr<DifferentiableModel> load_model(const std::string& path) {
  const nlohmann::json doc = parse_file(path);
  if (doc.contains("kind") && doc.at("kind") == "quadratic") {
    return std::make_unique<QuadraticModel>(
        matrix_from_json(doc.at("a"), path + ": a"),
        vector_from_json(doc.at("b"), path + ": b"),
        doc.at("c").get<double>());
  }
  return std::make_unique<MlpModel>(mlp_from_json(doc, path));
}

}  // namespace shapbench
