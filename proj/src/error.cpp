#include "ghostcheck/error.hpp"

namespace ghostcheck {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::VariableMismatch: return "VariableMismatch";
    case ErrorCode::MissingVariableImage: return "MissingVariableImage";
    case ErrorCode::NegativeExponent: return "NegativeExponent";
    case ErrorCode::NotNormalForm: return "NotNormalForm";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::PointNotOnCurve: return "PointNotOnCurve";
    case ErrorCode::WeierstrassPoint: return "WeierstrassPoint";
    case ErrorCode::PointAtNode: return "PointAtNode";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::WrongPointKind: return "WrongPointKind";
    case ErrorCode::TooManyPoints: return "TooManyPoints";
    case ErrorCode::NotAKernelVector: return "NotAKernelVector";
    case ErrorCode::GhostVanishingViolated: return "GhostVanishingViolated";
    case ErrorCode::NonConstantLevel: return "NonConstantLevel";
    case ErrorCode::UnexpectedPole: return "UnexpectedPole";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ModelConstructionFailure: return "ModelConstructionFailure";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

}  // namespace ghostcheck
