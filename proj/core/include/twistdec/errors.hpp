#pragma once

#include <stdexcept>
#include <string>

namespace twistdec {

enum class ErrorCode {
  NotHermitian,
  IndefiniteInput,
  AmbientMismatch,
  WindowExceeded,
  DomainMismatch,
  BadParameter,
  TwistNotUnitary,
  NotContraction,
  StabilizationFailure,
  NotIsometry,
  NonConvergent,
  NotPowerPartialIsometry,
  NotDoublyTwisted,
  SpeciesMismatch,
  HypothesisNotMet,
  NotTwisted,
  IllConditionedSpan,
  NotSameBase,
  SpanMismatch,
  SchemaError,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it to an outcome class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace twistdec
