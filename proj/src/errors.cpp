#include "cma/errors.hpp"

namespace cma {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::InvalidResolution: return "InvalidResolution";
    case ErrorCode::InvalidExponent: return "InvalidExponent";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::ContinuationStalled: return "ContinuationStalled";
    case ErrorCode::PositivityLost: return "PositivityLost";
    case ErrorCode::LinearSolveFailed: return "LinearSolveFailed";
    case ErrorCode::RoughInput: return "RoughInput";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::SubcriticalExponent: return "SubcriticalExponent";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace cma
