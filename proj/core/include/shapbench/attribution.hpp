#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shapbench {

enum class Method { kExact, kShear, kKs, kKsWf, kKsPair, kPs, kAps };

const char* method_name(Method m);
// Accepts both the enum spelling ("ks_wf") and the CLI spelling ("ks-wf").
Method method_from_name(const std::string& name);

// A length-M contribution vector plus run metadata. eval_count is the number
// of value-function calls actually made; curvature extractions are tracked
// separately via hessian_count.
struct Attribution {
  std::vector<double> phi;
  Method method = Method::kExact;
  std::int64_t budget_n = 0;
  std::optional<std::uint64_t> seed;
  std::int64_t eval_count = 0;
  std::int64_t hessian_count = 0;
  bool ridged = false;  // kernel solve fell back to a ridge term
};

}  // namespace shapbench
