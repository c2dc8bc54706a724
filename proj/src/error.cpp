#include "fgt/error.hpp"

namespace fgt {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kContextMismatch: return "ContextMismatch";
    case ErrorCode::kNonUnit: return "NonUnit";
    case ErrorCode::kCountTooLarge: return "CountTooLarge";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kTruncationExceeded: return "TruncationExceeded";
    case ErrorCode::kNonPositiveValuation: return "NonPositiveValuation";
    case ErrorCode::kIndeterminatePrecision: return "IndeterminatePrecision";
    case ErrorCode::kSingularReduction: return "SingularReduction";
    case ErrorCode::kInfiniteHeightComponent: return "InfiniteHeightComponent";
    case ErrorCode::kNonPPowerDegree: return "NonPPowerDegree";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kNonUnitDeterminant: return "NonUnitDeterminant";
    case ErrorCode::kExtensionMismatch: return "ExtensionMismatch";
    case ErrorCode::kEmbeddingResidual: return "EmbeddingResidual";
    case ErrorCode::kNoUnitCoefficient: return "NoUnitCoefficient";
    case ErrorCode::kLiftDiverged: return "LiftDiverged";
    case ErrorCode::kNotStrict: return "NotStrict";
    case ErrorCode::kUnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::kSpecError: return "SpecError";
  }
  return "Unknown";
}

}  // namespace fgt
