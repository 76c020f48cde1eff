#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace realexp {

enum class ErrorCode {
  InvalidInput,
  BasisMismatch,
  PrecisionExhausted,
  ArrangementMismatch,
  IllegalMorphism,
  NotFree,
  BadSequence,
  WindowTooSmall,
  NotInGroup,
  NotInOpenCone,
  Infeasible,
  EscapeViolated,
  NonzeroDifferential,
  LiftFailed,
};

std::string_view error_name(ErrorCode code);

/// Every module error surfaces as this exception; `code()` is what the CLI
/// serializes into its machine-readable error report.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace realexp
