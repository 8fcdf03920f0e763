#include "hyplyap/error.hpp"

namespace hyplyap {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::UnknownCase: return "UnknownCase";
    case ErrorCode::UnsupportedPoint: return "UnsupportedPoint";
    case ErrorCode::NonTermination: return "NonTermination";
    case ErrorCode::NotIntegrable: return "NotIntegrable";
    case ErrorCode::PrecisionAlarm: return "PrecisionAlarm";
    case ErrorCode::CorruptSnapshot: return "CorruptSnapshot";
    case ErrorCode::InvalidExponents: return "InvalidExponents";
    case ErrorCode::InvalidTopology: return "InvalidTopology";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotConcave: return "NotConcave";
    case ErrorCode::CompositionConstantTerm: return "CompositionConstantTerm";
    case ErrorCode::ReciprocalZeroConstant: return "ReciprocalZeroConstant";
    case ErrorCode::LogCancellationFailure: return "LogCancellationFailure";
    case ErrorCode::PoleOrderMismatch: return "PoleOrderMismatch";
    case ErrorCode::ZeroCoefficientInWindow: return "ZeroCoefficientInWindow";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotIntegrable:
      return 3;
    case ErrorCode::NonTermination:
    case ErrorCode::PrecisionAlarm:
    case ErrorCode::LogCancellationFailure:
    case ErrorCode::PoleOrderMismatch:
      return 4;
    case ErrorCode::CorruptSnapshot:
      return 5;
    default:
      return 2;
  }
}

}  // namespace hyplyap
