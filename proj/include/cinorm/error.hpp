#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cinorm {

enum class ErrorCode {
  ParseError,
  OddPermutation,
  OutOfRange,
  IdentityInput,
  SupportExceedsDegree,
  HypothesisUnmet,
  SearchExhausted,
  IdentityBase,
  BlockSearchFailed,
  NotGenerating,
  ProductOutsideSample,
  PowerOutsideSample,
  DegenerateDenominator,
  IndexBudgetExceeded,
  ArgumentCheckFailed,
  Singular,
  NotTriangular,
  NotSymmetric,
  NotPositiveDefinite,
  NotUnit,
  NotOrthogonal,
  NotSpecial,
  DimensionMismatch,
  ConfigInvalid,
  MalformedCertificate,
  RecompositionMismatch,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (CLI, Python) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cinorm
