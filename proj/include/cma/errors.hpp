#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cma {

enum class ErrorCode {
  InvalidDimension,
  InvalidResolution,
  InvalidExponent,
  NotPositive,
  ContinuationStalled,
  PositivityLost,
  LinearSolveFailed,
  RoughInput,
  ConstraintViolated,
  SubcriticalExponent,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure surfaced by the library carries one of the codes above so
/// callers (the CLI in particular) can map them to exit statuses and report
/// rows without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cma
