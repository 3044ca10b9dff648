#include "catembed/error.hpp"

namespace catembed {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotEigenvalue: return "NotEigenvalue";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotAnnihilated: return "NotAnnihilated";
    case ErrorKind::AlphaNotEigenvalue: return "AlphaNotEigenvalue";
    case ErrorKind::RingViolation: return "RingViolation";
    case ErrorKind::TemplateMismatch: return "TemplateMismatch";
    case ErrorKind::UnsupportedCase: return "UnsupportedCase";
    case ErrorKind::RingChainMismatch: return "RingChainMismatch";
    case ErrorKind::UnknownGate: return "UnknownGate";
    case ErrorKind::UnknownId: return "UnknownId";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
  }
  return "Error";
}

}  // namespace catembed
