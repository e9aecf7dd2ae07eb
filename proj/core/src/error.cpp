#include "qlmor/error.hpp"

namespace qlmor {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHurwitz: return "NotHurwitz";
    case ErrorCode::SolveFailure: return "SolveFailure";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorCode::DegenerateFormBreakdown: return "DegenerateFormBreakdown";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::NotSymplectic: return "NotSymplectic";
    case ErrorCode::NonUnitaryScattering: return "NonUnitaryScattering";
    case ErrorCode::CompletionFailure: return "CompletionFailure";
    case ErrorCode::ChannelMismatch: return "ChannelMismatch";
    case ErrorCode::IndexOverlap: return "IndexOverlap";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::SingularResolvent: return "SingularResolvent";
    case ErrorCode::StabilityRetryExhausted: return "StabilityRetryExhausted";
    case ErrorCode::NotCoDiagonalizable: return "NotCoDiagonalizable";
    case ErrorCode::CertificateInvalid: return "CertificateInvalid";
    case ErrorCode::SingularGramian: return "SingularGramian";
    case ErrorCode::SingularDelta: return "SingularDelta";
    case ErrorCode::GroupBoundaryViolation: return "GroupBoundaryViolation";
    case ErrorCode::BudgetInfeasible: return "BudgetInfeasible";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace qlmor
