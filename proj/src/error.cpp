#include "opinionflow/error.hpp"

namespace opinionflow {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kInvalidHorizon: return "invalid_horizon";
    case ErrorCode::kIncompleteAssignment: return "incomplete_assignment";
    case ErrorCode::kNotStable: return "not_stable";
    case ErrorCode::kEigensolverFailure: return "eigensolver_failure";
    case ErrorCode::kDegenerateNullSpace: return "degenerate_null_space";
    case ErrorCode::kSolverFailure: return "solver_failure";
    case ErrorCode::kExpmFailure: return "expm_failure";
  }
  return "unknown";
}

bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kEigensolverFailure:
    case ErrorCode::kDegenerateNullSpace:
    case ErrorCode::kSolverFailure:
    case ErrorCode::kExpmFailure:
      return false;
    default:
      return true;
  }
}

}  // namespace opinionflow
