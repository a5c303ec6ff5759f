#pragma once

#include <memory>
#include <string>

#include "shapbench/mlp.hpp"
#include "shapbench/quadratic.hpp"

namespace shapbench {

// Model files are JSON. Feed-forward models use
//   {"input_dim": int, "head": "scalar"|"logit_diff",
//    "layers": [{"activation": str, "weight": [[...]], "bias": [...]}]}
// with weight rows output-indexed. Quadratic value heads (used by fixtures
// and bound checks) are stored as
//   {"kind": "quadratic", "a": [[...]], "b": [...], "c": real}.
// Round trips are value-exact; saving a loaded model reproduces the file
// byte for byte.

std::string model_to_json_string(const MlpModel& model);
std::string model_to_json_string(const QuadraticModel& model);

void save_model(const MlpModel& model, const std::string& path);
void save_model(const QuadraticModel& model, const std::string& path);

// Parse/validation errors carry the offending field or layer.
MlpModel load_mlp_model(const std::string& path);

// Loads either flavor, dispatching on the "kind" field.
std::unique_ptr<DifferentiableModel> load_model(const std::string& path);

}  // namespace shapbench
