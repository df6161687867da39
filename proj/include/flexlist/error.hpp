#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flexlist {

enum class ErrorKind {
  EmptyGraph,
  Uncolorable,
  EmptyRequest,
  CapExceeded,
  PreconditionViolated,
  OracleViolation,
  OracleFailure,
  InternalError,
  BoundViolation,
  SetTooLarge,
  BadEndpointList,
  BadRequest,
  NotDegenerate,
  NotPrime,
  ParseError,
  SemanticError,
  InvalidArgument,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::Uncolorable: return "Uncolorable";
    case ErrorKind::EmptyRequest: return "EmptyRequest";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::OracleViolation: return "OracleViolation";
    case ErrorKind::OracleFailure: return "OracleFailure";
    case ErrorKind::InternalError: return "InternalError";
    case ErrorKind::BoundViolation: return "BoundViolation";
    case ErrorKind::SetTooLarge: return "SetTooLarge";
    case ErrorKind::BadEndpointList: return "BadEndpointList";
    case ErrorKind::BadRequest: return "BadRequest";
    case ErrorKind::NotDegenerate: return "NotDegenerate";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SemanticError: return "SemanticError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind whose name is stable
/// and shown to CLI users.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace flexlist
