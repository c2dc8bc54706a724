#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fgt {

enum class ErrorCode {
  kInvalidArgument,
  kContextMismatch,
  kNonUnit,
  kCountTooLarge,
  kShapeMismatch,
  kTruncationExceeded,
  kNonPositiveValuation,
  kIndeterminatePrecision,
  kSingularReduction,
  kInfiniteHeightComponent,
  kNonPPowerDegree,
  kBudgetExceeded,
  kNonUnitDeterminant,
  kExtensionMismatch,
  kEmbeddingResidual,
  kNoUnitCoefficient,
  kLiftDiverged,
  kNotStrict,
  kUnsupportedDimension,
  kSpecError,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure in the library is reported through this type; `code()`
/// is what reports and tests match on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fgt
