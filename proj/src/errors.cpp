#include "opineq/errors.hpp"

namespace opineq {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::SingularNegativePower: return "SingularNegativePower";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::CtxMismatch: return "CtxMismatch";
    case ErrorCode::InvalidNorm: return "InvalidNorm";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::DimCap: return "DimCap";
    case ErrorCode::NotContractive: return "NotContractive";
    case ErrorCode::MaxTermsExceeded: return "MaxTermsExceeded";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::BadExponents: return "BadExponents";
    case ErrorCode::BallViolated: return "BallViolated";
    case ErrorCode::NonUnitalE: return "NonUnitalE";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::UnknownCheck: return "UnknownCheck";
    case ErrorCode::IOFailure: return "IOFailure";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace opineq
