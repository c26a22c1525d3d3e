#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tcs {

enum class ErrorCode {
  DegenerateLattice,
  IndefiniteLattice,
  BadSignature,
  NonpositiveAxis,
  UnboundedSearch,
  OddLattice,
  RankUnsupported,
  NoEmbeddingFound,
  NonIntegralDegree,
  NotWeakFano,
  InvalidInput,
  ParseError,
  ValidationError,
  DegenerateP,
  NonIntegralResidue,
  LiftNotFound,
  SingularPairing,
  Inconsistent,
  ScopeError,
  ShapeMismatch,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateLattice: return "DegenerateLattice";
    case ErrorCode::IndefiniteLattice: return "IndefiniteLattice";
    case ErrorCode::BadSignature: return "BadSignature";
    case ErrorCode::NonpositiveAxis: return "NonpositiveAxis";
    case ErrorCode::UnboundedSearch: return "UnboundedSearch";
    case ErrorCode::OddLattice: return "OddLattice";
    case ErrorCode::RankUnsupported: return "RankUnsupported";
    case ErrorCode::NoEmbeddingFound: return "NoEmbeddingFound";
    case ErrorCode::NonIntegralDegree: return "NonIntegralDegree";
    case ErrorCode::NotWeakFano: return "NotWeakFano";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::DegenerateP: return "DegenerateP";
    case ErrorCode::NonIntegralResidue: return "NonIntegralResidue";
    case ErrorCode::LiftNotFound: return "LiftNotFound";
    case ErrorCode::SingularPairing: return "SingularPairing";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::ScopeError: return "ScopeError";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` distinguishes the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tcs
