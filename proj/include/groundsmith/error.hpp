#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace groundsmith {

enum class ErrorKind {
  SyntaxError,
  EmptyInput,
  EmptyTrace,
  InvalidConfig,
  InvalidState,
  StateExplosion,
  ArityMismatch,
  SortMismatch,
  UnknownToken,
  AmbiguousGrounding,
  NameCollision,
  UnresolvableAP,
  UnclassifiableUtterance,
  NonDistinctGroundings,
  UnboundSlot,
  UnusedParameter,
  DescriptorMismatch,
  CorruptLibrary,
  HorizonExceeded,
  InsufficientVocabulary,
  NoValidExample,
  MissingTemplate,
  UnknownSession,
  MalformedBody,
  PlanExhausted,
  Io,
};

constexpr std::string_view kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::EmptyTrace: return "EmptyTrace";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::StateExplosion: return "StateExplosion";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::SortMismatch: return "SortMismatch";
    case ErrorKind::UnknownToken: return "UnknownToken";
    case ErrorKind::AmbiguousGrounding: return "AmbiguousGrounding";
    case ErrorKind::NameCollision: return "NameCollision";
    case ErrorKind::UnresolvableAP: return "UnresolvableAP";
    case ErrorKind::UnclassifiableUtterance: return "UnclassifiableUtterance";
    case ErrorKind::NonDistinctGroundings: return "NonDistinctGroundings";
    case ErrorKind::UnboundSlot: return "UnboundSlot";
    case ErrorKind::UnusedParameter: return "UnusedParameter";
    case ErrorKind::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorKind::CorruptLibrary: return "CorruptLibrary";
    case ErrorKind::HorizonExceeded: return "HorizonExceeded";
    case ErrorKind::InsufficientVocabulary: return "InsufficientVocabulary";
    case ErrorKind::NoValidExample: return "NoValidExample";
    case ErrorKind::MissingTemplate: return "MissingTemplate";
    case ErrorKind::UnknownSession: return "UnknownSession";
    case ErrorKind::MalformedBody: return "MalformedBody";
    case ErrorKind::PlanExhausted: return "PlanExhausted";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI and the HTTP layer can report it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string detail)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + detail),
        kind_(kind),
        detail_(std::move(detail)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace groundsmith
