#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dcx {

enum class ErrorKind {
  DimensionMismatch,
  FieldMismatch,
  AlgebraMismatch,
  NotCommutative,
  NotAssociative,
  NotLocal,
  NotArtinianLocal,
  NotArtinian,
  InvalidModule,
  InvalidComplex,
  ZeroComplex,
  NotSemidualizing,
  NotModule,
  WindowExceeded,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the engine carries a machine-readable kind; the
/// message names the violated axiom and, where one exists, a witness.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dcx
