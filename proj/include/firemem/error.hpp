#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace firemem {

enum class ErrorCode {
  LengthMismatch,
  DelayOutOfRange,
  DanglingNodeId,
  DuplicateInput,
  DeltaOutOfRange,
  BudgetExceeded,
  TauTooSmall,
  KTooSmall,
  NonDistinctPrimes,
  EmptyList,
  SyntaxError,
  CycleDetected,
  UnknownIdentifier,
  NegationRejected,
  OutputArityMismatch,
  NotAlternating,
  DegreeTooHigh,
  IllFormed,
  CalibrationFailed,
  FormatError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every failure surfaced by the library carries one of the codes above so that
// callers (and the CLI) can distinguish error classes without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DelayOutOfRange: return "DelayOutOfRange";
    case ErrorCode::DanglingNodeId: return "DanglingNodeId";
    case ErrorCode::DuplicateInput: return "DuplicateInput";
    case ErrorCode::DeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::TauTooSmall: return "TauTooSmall";
    case ErrorCode::KTooSmall: return "KTooSmall";
    case ErrorCode::NonDistinctPrimes: return "NonDistinctPrimes";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::NegationRejected: return "NegationRejected";
    case ErrorCode::OutputArityMismatch: return "OutputArityMismatch";
    case ErrorCode::NotAlternating: return "NotAlternating";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::IllFormed: return "IllFormed";
    case ErrorCode::CalibrationFailed: return "CalibrationFailed";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace firemem
