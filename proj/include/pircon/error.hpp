#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pircon {

enum class ErrorKind {
  CycleDetected,
  RedundantCover,
  UnknownId,
  DuplicateId,
  NotComparable,
  SizeLimitExceeded,
  FaceNotInComplex,
  NotCollapsibleWithThisMatching,
  NoMaximum,
  MultipleMinima,
  NotProper,
  NotRemovable,
  SpmInvalid,
  NotOrderProjection,
  AuditFailed,
  GroupTooLarge,
  UnsupportedType,
  InvalidAutomorphism,
  NotInIdealClosure,
  UniquenessViolated,
  NoReducedExpression,
  VerificationFailed,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pircon
