#pragma once

#include <stdexcept>
#include <string>

namespace nucdim {

// Every failure mode the library reports, so callers (and tests) can
// dispatch on the category instead of parsing messages.
enum class ErrorKind {
  ParseError,
  DuplicateId,
  DanglingEndpoint,
  PreconditionViolated,
  CapExceeded,
  NotAReturnPath,
  GraphMismatch,
  NotComposable,
  InvalidPath,
  NotShiftEquivalent,
  InvalidAction,
  NotAUnit,
  NumericalDegeneracy,
  InvalidCocycle,
  NotABisection,
  BoundViolated,
  MissingInput,
  NegativeInput,
  NotApplicable,
  VerificationFailed,
  UsageError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace nucdim
