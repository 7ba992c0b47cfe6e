#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ghostcheck {

enum class ErrorCode {
  InvalidInput,
  VariableMismatch,
  MissingVariableImage,
  NegativeExponent,
  NotNormalForm,
  DimensionMismatch,
  IndexOutOfRange,
  PreconditionViolation,
  NotSquarefree,
  PointNotOnCurve,
  WeierstrassPoint,
  PointAtNode,
  DuplicatePoint,
  WrongPointKind,
  TooManyPoints,
  NotAKernelVector,
  GhostVanishingViolated,
  NonConstantLevel,
  UnexpectedPole,
  LengthMismatch,
  ModelConstructionFailure,
  InternalError,
};

/// Stable machine-readable name, used in JSON reports.
std::string_view code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ghostcheck
