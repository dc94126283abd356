#include "numrad/error.hpp"

namespace numrad {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotContraction: return "NotContraction";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::ShapeUnsupported: return "ShapeUnsupported";
    case ErrorKind::EmptyList: return "EmptyList";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InvalidFunction: return "InvalidFunction";
    case ErrorKind::NegativeSpectrum: return "NegativeSpectrum";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::ToleranceUnreachable: return "ToleranceUnreachable";
    case ErrorKind::UnknownBound: return "UnknownBound";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace numrad
