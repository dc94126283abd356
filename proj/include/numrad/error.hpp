#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace numrad {

enum class ErrorKind {
  NotSquare,
  NotHermitian,
  NotNormal,
  NotContraction,
  NonFinite,
  DimensionMismatch,
  DimensionTooLarge,
  ShapeUnsupported,
  EmptyList,
  OutOfRange,
  InvalidFunction,
  NegativeSpectrum,
  ConvergenceFailure,
  ToleranceUnreachable,
  UnknownBound,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace numrad
