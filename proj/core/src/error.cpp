#include "hetstab/error.hpp"

namespace hetstab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyCycle: return "EmptyCycle";
    case ErrorKind::MismatchedConnectionCount: return "MismatchedConnectionCount";
    case ErrorKind::NoTransverseDirections: return "NoTransverseDirections";
    case ErrorKind::NonPositiveEigenvalue: return "NonPositiveEigenvalue";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::MismatchedTransverseCount: return "MismatchedTransverseCount";
    case ErrorKind::InvalidPermutation: return "InvalidPermutation";
    case ErrorKind::NonPositiveScaling: return "NonPositiveScaling";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DefectiveMatrix: return "DefectiveMatrix";
    case ErrorKind::NoAdmissibleDominant: return "NoAdmissibleDominant";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::Indeterminate: return "Indeterminate";
    case ErrorKind::NotFAS: return "NotFAS";
    case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorKind::NonPositiveInput: return "NonPositiveInput";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

namespace {

std::string join_violations(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += std::string(to_string(v.kind)) + " (" + v.message + ")";
  }
  return out;
}

ErrorKind first_kind(const std::vector<Violation>& violations) {
  return violations.empty() ? ErrorKind::InvalidArgument : violations.front().kind;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(first_kind(violations), join_violations(violations)),
      violations_(std::move(violations)) {}

IndeterminateError::IndeterminateError(std::size_t node, ErrorKind cause,
                                       const std::string& detail)
    : Error(ErrorKind::Indeterminate,
            "node " + std::to_string(node) + ": " + std::string(to_string(cause)) + " (" +
                detail + ")"),
      node_(node),
      cause_(cause) {}

}  // namespace hetstab
