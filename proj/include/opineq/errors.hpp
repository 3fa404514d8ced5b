#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace opineq {

enum class ErrorCode {
  NotHermitian,
  NotPSD,
  SingularNegativePower,
  DimMismatch,
  CtxMismatch,
  InvalidNorm,
  InvalidK,
  DimCap,
  NotContractive,
  MaxTermsExceeded,
  NotNormal,
  BadExponents,
  BallViolated,
  NonUnitalE,
  InvalidSpec,
  UnknownCheck,
  IOFailure,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this type; `code()` lets the
// harness route precondition errors separately from inequality failures.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace opineq
