#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "numrad/matrix.hpp"

namespace numrad {

/// Matrix file schema:
///   {"rows": R, "cols": C, "data": [[re, im], ...]}   (row-major, R*C pairs)
/// Numbers are written with 17 significant digits so a write/read round trip
/// is bit-exact. Parse failures throw ParseError; a wrong data count throws
/// DimensionMismatch.
ComplexMatrix parse_matrix(std::string_view json_text);
ComplexMatrix read_matrix(const std::filesystem::path& path);
std::string format_matrix(const ComplexMatrix& m);
void write_matrix(const std::filesystem::path& path, const ComplexMatrix& m);

/// %.17g formatting used by every machine-readable output.
std::string format_double(double v);

}  // namespace numrad
