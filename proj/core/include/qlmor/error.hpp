#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qlmor {

enum class ErrorCode {
  NotHurwitz,
  SolveFailure,
  OddDimension,
  NotSymmetric,
  NotDiagonalizable,
  DegenerateFormBreakdown,
  NotCommuting,
  NotSymplectic,
  NonUnitaryScattering,
  CompletionFailure,
  ChannelMismatch,
  IndexOverlap,
  DimensionMismatch,
  BadRange,
  SingularResolvent,
  StabilityRetryExhausted,
  NotCoDiagonalizable,
  CertificateInvalid,
  SingularGramian,
  SingularDelta,
  GroupBoundaryViolation,
  BudgetInfeasible,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above; the
// message holds the human-readable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace qlmor
