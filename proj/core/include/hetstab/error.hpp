#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hetstab {

enum class ErrorKind {
  // Cycle validation.
  EmptyCycle,
  MismatchedConnectionCount,
  NoTransverseDirections,
  NonPositiveEigenvalue,
  NonFiniteValue,
  MismatchedTransverseCount,
  InvalidPermutation,
  NonPositiveScaling,
  // Input handling.
  ParseError,
  InvalidArgument,
  DimensionMismatch,
  IndexOutOfRange,
  // Spectral analysis.
  DefectiveMatrix,
  NoAdmissibleDominant,
  PreconditionViolated,
  // Index evaluation.
  ZeroVector,
  Indeterminate,
  NotFAS,
  ParamOutOfRange,
  // Oracle.
  NonPositiveInput,
  InvalidConfig,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct Violation {
  ErrorKind kind;
  std::string message;
};

// Thrown by validate_cycle; carries every violation found, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// A spectral failure (defective basis, ambiguous dominant eigenvalue) met while
// computing the index at a particular node.
class IndeterminateError : public Error {
 public:
  IndeterminateError(std::size_t node, ErrorKind cause, const std::string& detail);

  std::size_t node() const noexcept { return node_; }
  ErrorKind cause() const noexcept { return cause_; }

 private:
  std::size_t node_;
  ErrorKind cause_;
};

}  // namespace hetstab
