#pragma once

#include <stdexcept>
#include <string>

namespace catembed {

enum class ErrorKind {
  InvalidArgument,
  DivisionByZero,
  ShapeMismatch,
  NotSquare,
  NotEigenvalue,
  NotNormal,
  NotAnnihilated,
  AlphaNotEigenvalue,
  RingViolation,
  TemplateMismatch,
  UnsupportedCase,
  RingChainMismatch,
  UnknownGate,
  UnknownId,
  ParseError,
  DimensionMismatch,
  TooLarge,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace catembed
