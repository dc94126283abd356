#include "numrad/matrix.hpp"

#include <cmath>
#include <cstring>

#include "numrad/error.hpp"

namespace numrad {

namespace {

void require_finite(const DenseMatrix& m) {
  if (!m.allFinite()) throw Error(ErrorKind::NonFinite, "matrix has NaN or Inf entries");
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw Error(ErrorKind::ShapeUnsupported, "matrix dimensions must be positive");
  m_ = DenseMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}

ComplexMatrix::ComplexMatrix(DenseMatrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.cols() == 0) throw Error(ErrorKind::ShapeUnsupported, "matrix dimensions must be positive");
  require_finite(m_);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::span<const cplx> row_major)
    : ComplexMatrix(rows, cols) {
  if (row_major.size() != rows * cols) {
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(rows * cols) + " entries, got " +
                                                  std::to_string(row_major.size()));
  }
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row_major[i * cols + j];
  require_finite(m_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  return ComplexMatrix(DenseMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
  ComplexMatrix out(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) out.m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag[i];
  require_finite(out.m_);
  return out;
}

std::vector<cplx> ComplexMatrix::row_major() const {
  std::vector<cplx> out;
  out.reserve(rows() * cols());
  for (Eigen::Index i = 0; i < m_.rows(); ++i)
    for (Eigen::Index j = 0; j < m_.cols(); ++j) out.push_back(m_(i, j));
  return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "operator+");
  return ComplexMatrix(DenseMatrix(a.m_ + b.m_));
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "operator-");
  return ComplexMatrix(DenseMatrix(a.m_ - b.m_));
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "operator*");
  return ComplexMatrix(DenseMatrix(a.m_ * b.m_));
}

ComplexMatrix operator*(cplx c, const ComplexMatrix& a) { return ComplexMatrix(DenseMatrix(c * a.m_)); }

std::uint64_t digest(const ComplexMatrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::uint64_t shape[2] = {m.rows(), m.cols()};
  feed(shape, sizeof(shape));
  for (const cplx& v : m.row_major()) {
    const double parts[2] = {v.real(), v.imag()};
    feed(parts, sizeof(parts));
  }
  return h;
}

}  // namespace numrad
