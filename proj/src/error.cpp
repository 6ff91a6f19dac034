#include "cinorm/error.hpp"

namespace cinorm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::OddPermutation: return "OddPermutation";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::IdentityInput: return "IdentityInput";
    case ErrorCode::SupportExceedsDegree: return "SupportExceedsDegree";
    case ErrorCode::HypothesisUnmet: return "HypothesisUnmet";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::IdentityBase: return "IdentityBase";
    case ErrorCode::BlockSearchFailed: return "BlockSearchFailed";
    case ErrorCode::NotGenerating: return "NotGenerating";
    case ErrorCode::ProductOutsideSample: return "ProductOutsideSample";
    case ErrorCode::PowerOutsideSample: return "PowerOutsideSample";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::IndexBudgetExceeded: return "IndexBudgetExceeded";
    case ErrorCode::ArgumentCheckFailed: return "ArgumentCheckFailed";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotTriangular: return "NotTriangular";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::NotSpecial: return "NotSpecial";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::MalformedCertificate: return "MalformedCertificate";
    case ErrorCode::RecompositionMismatch: return "RecompositionMismatch";
  }
  return "Unknown";
}

}  // namespace cinorm
