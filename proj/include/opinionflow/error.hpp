#pragma once

#include <stdexcept>
#include <string>

namespace opinionflow {

enum class ErrorCode {
  kValidation,
  kParse,
  kIo,
  kDimensionMismatch,
  kInvalidHorizon,
  kIncompleteAssignment,
  kNotStable,
  kEigensolverFailure,
  kDegenerateNullSpace,
  kSolverFailure,
  kExpmFailure,
};

/// Stable lowercase identifier, used in machine-readable error reports.
const char* error_code_name(ErrorCode code) noexcept;

/// True for failures caused by bad input rather than numerics.
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace opinionflow
