#include "shapbench/attribution.hpp"

#include "shapbench/errors.hpp"

namespace shapbench {

const char* method_name(Method m) {
  switch (m) {
    case Method::kExact: return "exact";
    case Method::kShear: return "shear";
    case Method::kKs: return "ks";
    case Method::kKsWf: return "ks_wf";
    case Method::kKsPair: return "ks_pair";
    case Method::kPs: return "ps";
    case Method::kAps: return "aps";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  if (name == "exact") return Method::kExact;
  if (name == "shear") return Method::kShear;
  if (name == "ks") return Method::kKs;
  if (name == "ks_wf" || name == "ks-wf") return Method::kKsWf;
  if (name == "ks_pair" || name == "ks-pair") return Method::kKsPair;
  if (name == "ps") return Method::kPs;
  if (name == "aps") return Method::kAps;
  throw_error(ErrorKind::kConfig, "unknown method: \"" + name + "\"");
}

}  // namespace shapbench
