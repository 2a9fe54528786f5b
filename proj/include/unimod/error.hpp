#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace unimod {

/// Stable names for every expected failure the library reports. The CLI
/// prints these verbatim, so renaming one is a breaking change.
enum class ErrorCode {
  DegenerateForm,
  NotUnimodular,
  EmptyForm,
  InconsistentInvariants,
  DefiniteNotClassified,
  InconsistentEvenSignature,
  DefiniteEvenUnrealizable,
  InvalidSurface,
  NotPrime,
  UnsupportedDegree,
  FieldTooLarge,
  ZeroForm,
  UnknownVariety,
  UnsupportedModel,
  MalformedInput,
};

constexpr std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::EmptyForm: return "EmptyForm";
    case ErrorCode::InconsistentInvariants: return "InconsistentInvariants";
    case ErrorCode::DefiniteNotClassified: return "DefiniteNotClassified";
    case ErrorCode::InconsistentEvenSignature: return "InconsistentEvenSignature";
    case ErrorCode::DefiniteEvenUnrealizable: return "DefiniteEvenUnrealizable";
    case ErrorCode::InvalidSurface: return "InvalidSurface";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::ZeroForm: return "ZeroForm";
    case ErrorCode::UnknownVariety: return "UnknownVariety";
    case ErrorCode::UnsupportedModel: return "UnsupportedModel";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

/// A mathematically meaningful refusal (bad input data, a theorem hypothesis
/// that does not hold). Precondition violations by the caller are reported
/// with std::invalid_argument instead.
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace unimod
