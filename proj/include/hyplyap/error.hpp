#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyplyap {

enum class ErrorCode {
  InvalidParams,
  UnknownCase,
  UnsupportedPoint,
  NonTermination,
  NotIntegrable,
  PrecisionAlarm,
  CorruptSnapshot,
  InvalidExponents,
  InvalidTopology,
  OutOfRange,
  NotConcave,
  CompositionConstantTerm,
  ReciprocalZeroConstant,
  LogCancellationFailure,
  PoleOrderMismatch,
  ZeroCoefficientInWindow,
};

std::string_view error_name(ErrorCode code) noexcept;

/// Process exit code used by the command-line tool for an error of this kind.
/// 2 invalid input, 3 integrability gate, 4 numerical alarm, 5 corrupt snapshot.
int exit_code_for(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hyplyap
