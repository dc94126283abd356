#include "numrad/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "numrad/error.hpp"

namespace numrad {

namespace {

double finite_number(const nlohmann::json& v) {
  if (!v.is_number()) throw Error(ErrorKind::ParseError, "matrix entries must be numbers");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw Error(ErrorKind::ParseError, "matrix entries must be finite");
  return d;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ComplexMatrix parse_matrix(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") || !doc.contains("data")) {
    throw Error(ErrorKind::ParseError, "matrix file needs rows, cols and data");
  }
  if (!doc["rows"].is_number_unsigned() || !doc["cols"].is_number_unsigned() || !doc["data"].is_array()) {
    throw Error(ErrorKind::ParseError, "rows/cols must be positive integers and data an array");
  }
  const auto rows = doc["rows"].get<std::size_t>();
  const auto cols = doc["cols"].get<std::size_t>();
  if (rows == 0 || cols == 0) throw Error(ErrorKind::ParseError, "rows and cols must be positive");
  const auto& data = doc["data"];
  if (data.size() != rows * cols) {
    throw Error(ErrorKind::DimensionMismatch,
                "data has " + std::to_string(data.size()) + " entries, expected " + std::to_string(rows * cols));
  }
  std::vector<cplx> entries;
  entries.reserve(data.size());
  for (const auto& e : data) {
    if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::ParseError, "each entry must be a [re, im] pair");
    entries.emplace_back(finite_number(e[0]), finite_number(e[1]));
  }
  return ComplexMatrix(rows, cols, entries);
}

ComplexMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

std::string format_matrix(const ComplexMatrix& m) {
  std::ostringstream out;
  out << "{\"rows\": " << m.rows() << ", \"cols\": " << m.cols() << ", \"data\": [";
  const auto entries = m.row_major();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0) out << ", ";
    out << '[' << format_double(entries[i].real()) << ", " << format_double(entries[i].imag()) << ']';
  }
  out << "]}\n";
  return out.str();
}

void write_matrix(const std::filesystem::path& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path.string());
  out << format_matrix(m);
}

}  // namespace numrad
