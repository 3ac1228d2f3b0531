#include "twistdec/errors.hpp"

namespace twistdec {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::IndefiniteInput: return "IndefiniteInput";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::WindowExceeded: return "WindowExceeded";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::TwistNotUnitary: return "TwistNotUnitary";
    case ErrorCode::NotContraction: return "NotContraction";
    case ErrorCode::StabilizationFailure: return "StabilizationFailure";
    case ErrorCode::NotIsometry: return "NotIsometry";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::NotPowerPartialIsometry: return "NotPowerPartialIsometry";
    case ErrorCode::NotDoublyTwisted: return "NotDoublyTwisted";
    case ErrorCode::SpeciesMismatch: return "SpeciesMismatch";
    case ErrorCode::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorCode::NotTwisted: return "NotTwisted";
    case ErrorCode::IllConditionedSpan: return "IllConditionedSpan";
    case ErrorCode::NotSameBase: return "NotSameBase";
    case ErrorCode::SpanMismatch: return "SpanMismatch";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "UnknownError";
}

}  // namespace twistdec
