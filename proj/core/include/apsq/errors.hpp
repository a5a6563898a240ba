#pragma once

#include <stdexcept>
#include <string>

namespace apsq {

// Structured error taxonomy. The CLI maps kinds to exit codes; library
// callers can catch apsq::Error and switch on kind().
enum class ErrorKind {
  InvalidArgument,
  ArithmeticError,
  ResourceLimit,
  UnsupportedCharacteristic,
  DegenerateConfiguration,
  InvalidCurve,
  NotReducible,
  InvariantViolation,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_error(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::ArithmeticError: return "arithmetic-error";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::UnsupportedCharacteristic: return "unsupported-characteristic";
    case ErrorKind::DegenerateConfiguration: return "degenerate-configuration";
    case ErrorKind::InvalidCurve: return "invalid-curve";
    case ErrorKind::NotReducible: return "not-reducible";
    case ErrorKind::InvariantViolation: return "invariant-violation";
  }
  return "unknown";
}

}  // namespace apsq
