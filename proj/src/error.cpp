#include "pircon/error.hpp"

namespace pircon {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::RedundantCover: return "RedundantCover";
    case ErrorKind::UnknownId: return "UnknownId";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::NotComparable: return "NotComparable";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::FaceNotInComplex: return "FaceNotInComplex";
    case ErrorKind::NotCollapsibleWithThisMatching: return "NotCollapsibleWithThisMatching";
    case ErrorKind::NoMaximum: return "NoMaximum";
    case ErrorKind::MultipleMinima: return "MultipleMinima";
    case ErrorKind::NotProper: return "NotProper";
    case ErrorKind::NotRemovable: return "NotRemovable";
    case ErrorKind::SpmInvalid: return "SpmInvalid";
    case ErrorKind::NotOrderProjection: return "NotOrderProjection";
    case ErrorKind::AuditFailed: return "AuditFailed";
    case ErrorKind::GroupTooLarge: return "GroupTooLarge";
    case ErrorKind::UnsupportedType: return "UnsupportedType";
    case ErrorKind::InvalidAutomorphism: return "InvalidAutomorphism";
    case ErrorKind::NotInIdealClosure: return "NotInIdealClosure";
    case ErrorKind::UniquenessViolated: return "UniquenessViolated";
    case ErrorKind::NoReducedExpression: return "NoReducedExpression";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace pircon
