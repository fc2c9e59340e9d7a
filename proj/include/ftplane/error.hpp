#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ftplane {

enum class ErrorCode {
  // Input validation.
  EmptyInput,
  NonFinite,
  InvalidArgument,
  OddVertexCount,
  NotConvex,
  NotSymmetric,
  OriginOutside,
  ZeroVector,
  NotUnitFunctional,
  LambdaTooSmall,
  PreconditionViolated,
  InvalidDocument,
  // Certificate / cone pipeline. These signal an internal inconsistency when
  // raised from ft_solve.
  Unbounded,
  EmptyIntersection,
  Infeasible,
  CertificateFailure,
  WitnessFailed,
  InvariantViolation,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OddVertexCount: return "OddVertexCount";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::OriginOutside: return "OriginOutside";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotUnitFunctional: return "NotUnitFunctional";
    case ErrorCode::LambdaTooSmall: return "LambdaTooSmall";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::InvalidDocument: return "InvalidDocument";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::CertificateFailure: return "CertificateFailure";
    case ErrorCode::WitnessFailed: return "WitnessFailed";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

// True for codes that indicate solver/criterion disagreement rather than bad
// user input.
constexpr bool is_internal(ErrorCode code) {
  switch (code) {
    case ErrorCode::Unbounded:
    case ErrorCode::EmptyIntersection:
    case ErrorCode::Infeasible:
    case ErrorCode::CertificateFailure:
    case ErrorCode::WitnessFailed:
    case ErrorCode::InvariantViolation:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ftplane
