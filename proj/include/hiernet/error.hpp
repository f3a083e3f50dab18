#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hiernet {

enum class ErrorKind {
  DuplicateEdge,
  VertexOutOfRange,
  SelfLoop,
  TwoCycle,
  SubstructureCountMismatch,
  SignViolationInOverride,
  IndexOutOfRange,
  DimensionMismatch,
  NonFiniteInput,
  InvalidParameter,
  NotAnEdge,
  OutOfRange,
  NumericalFailure,
  ParseError,
  SchemaError,
  ValidationError,
};

inline constexpr std::string_view to_string(ErrorKind k) noexcept {
  switch (k) {
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::TwoCycle: return "TwoCycle";
    case ErrorKind::SubstructureCountMismatch: return "SubstructureCountMismatch";
    case ErrorKind::SignViolationInOverride: return "SignViolationInOverride";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFiniteInput: return "NonFiniteInput";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::NotAnEdge: return "NotAnEdge";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable kind next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hiernet
