#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace credrect {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  LengthMismatch,
  NotSymmetric,
  NotPositiveDefinite,
  NonPositiveDiagonal,
  InvalidDof,
  DegenerateColumn,
  InsufficientSamples,
  NoFeasibleLevel,
  StreamExhausted,
  InexactExtremeSet,
  OutOfRange,
  ConstructionFailed,
  ParseError,
  RaggedRows,
  NonNumericCell,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (and the CLI's
/// exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace credrect
