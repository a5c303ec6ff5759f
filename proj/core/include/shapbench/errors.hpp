#pragma once

#include <stdexcept>
#include <string>

namespace shapbench {

// Error categories, mapped onto CLI exit codes: configuration-class errors
// (config/parse/validation/argument) exit 1, runtime-class errors exit 2.
enum class ErrorKind {
  kConfig,
  kParse,
  kValidation,
  kArgument,
  kInput,
  kResource,
  kTraining,
  kEstimation,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  bool is_config_class() const {
    return kind_ == ErrorKind::kConfig || kind_ == ErrorKind::kParse ||
           kind_ == ErrorKind::kValidation || kind_ == ErrorKind::kArgument;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_error(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace shapbench
