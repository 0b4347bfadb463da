#include "nucdim/errors.hpp"

namespace nucdim {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "parse-error";
    case ErrorKind::DuplicateId: return "duplicate-id";
    case ErrorKind::DanglingEndpoint: return "dangling-endpoint";
    case ErrorKind::PreconditionViolated: return "precondition-violated";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::NotAReturnPath: return "not-a-return-path";
    case ErrorKind::GraphMismatch: return "graph-mismatch";
    case ErrorKind::NotComposable: return "non-composable";
    case ErrorKind::InvalidPath: return "invalid-path";
    case ErrorKind::NotShiftEquivalent: return "not-shift-equivalent";
    case ErrorKind::InvalidAction: return "invalid-action";
    case ErrorKind::NotAUnit: return "not-a-unit";
    case ErrorKind::NumericalDegeneracy: return "numerical-degeneracy";
    case ErrorKind::InvalidCocycle: return "invalid-cocycle";
    case ErrorKind::NotABisection: return "not-a-bisection";
    case ErrorKind::BoundViolated: return "bound-violated";
    case ErrorKind::MissingInput: return "missing-input";
    case ErrorKind::NegativeInput: return "negative-input";
    case ErrorKind::NotApplicable: return "not-applicable";
    case ErrorKind::VerificationFailed: return "verification-failed";
    case ErrorKind::UsageError: return "usage-error";
  }
  return "unknown-error";
}

}  // namespace nucdim
