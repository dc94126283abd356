#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace numrad {

using cplx = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

/// Dense complex matrix with at least one row and one column and only
/// finite entries. Thin value wrapper over an Eigen matrix.
class ComplexMatrix {
 public:
  /// rows x cols zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Takes ownership of an Eigen matrix; throws NonFinite / ShapeUnsupported.
  explicit ComplexMatrix(DenseMatrix m);
  /// Row-major entries; throws DimensionMismatch if the count is wrong.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::span<const cplx> row_major);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> diag);
  static ComplexMatrix scalar(cplx v) { return ComplexMatrix(1, 1, std::span<const cplx>(&v, 1)); }

  std::size_t rows() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(m_.cols()); }
  bool is_square() const noexcept { return m_.rows() == m_.cols(); }

  cplx operator()(std::size_t i, std::size_t j) const { return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }

  const DenseMatrix& dense() const noexcept { return m_; }

  std::vector<cplx> row_major() const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(cplx c, const ComplexMatrix& a);

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_.cols() == b.m_.cols() && a.m_ == b.m_;
  }

 private:
  DenseMatrix m_;
};

/// 64-bit FNV-1a digest over shape and the raw bytes of the entries.
std::uint64_t digest(const ComplexMatrix& m);

}  // namespace numrad
