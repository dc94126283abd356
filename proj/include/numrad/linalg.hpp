#pragma once

#include <functional>
#include <vector>

#include "numrad/matrix.hpp"

namespace numrad {

inline constexpr double kEigTol = 1e-10;
inline constexpr double kClampTol = 1e-12;

/// Eigenpairs of a Hermitian matrix. `values` ascending, `vectors` holds the
/// matching orthonormal eigenvectors as columns.
struct HermEigen {
  Eigen::VectorXd values;
  DenseMatrix vectors;
};

using ScalarFn = std::function<double(double)>;

ComplexMatrix adjoint(const ComplexMatrix& m);

/// Checks ||H - H*|| <= 1e-10 max(1, ||H||), then decomposes (H + H*)/2.
/// Throws NotSquare, NotHermitian or ConvergenceFailure.
HermEigen herm_eig(const ComplexMatrix& h);

/// Same contract on a raw Eigen matrix; used on hot paths that already know
/// the input is Hermitian by construction (skips the pre-check, keeps the
/// residual check).
HermEigen herm_eig_unchecked(const DenseMatrix& h);

/// Largest eigenvalue and a unit eigenvector of a Hermitian matrix.
struct TopEigen {
  double value;
  DenseVector vector;
};
TopEigen top_eigen(const DenseMatrix& hermitian);

/// |M| = (M*M)^{1/2}, side M.cols().
ComplexMatrix abs_op(const ComplexMatrix& m);

/// V diag(phi(lambda)) V* for PSD H. Eigenvalues in [-1e-12 ||H||, 0) are
/// clamped to 0; anything lower throws NegativeSpectrum.
/// `seen_eigenvalues`, when given, receives the clamped spectrum.
ComplexMatrix fn_of_psd(const ComplexMatrix& h, const ScalarFn& phi,
                        std::vector<double>* seen_eigenvalues = nullptr);

/// Largest singular value; exactly 0 for the zero matrix.
double spectral_norm(const ComplexMatrix& m);
double spectral_norm(const DenseMatrix& m);

/// (M + M*)/2 and (M - M*)/(2i).
ComplexMatrix real_part(const ComplexMatrix& m);
ComplexMatrix imag_part(const ComplexMatrix& m);

/// ||M*M - MM*|| <= tol_rel ||M||^2.
bool is_normal(const ComplexMatrix& m, double tol_rel = 1e-9);

/// Off-diagonal operator matrix [[0, X], [Y, 0]] with X: m x n, Y: n x m.
struct OffDiagPair {
  ComplexMatrix x;
  ComplexMatrix y;

  OffDiagPair(ComplexMatrix x_, ComplexMatrix y_);
  std::size_t m() const { return x.rows(); }
  std::size_t n() const { return x.cols(); }
};

/// [[A, B], [C, D]] with A: m x m, B: m x n, C: n x m, D: n x n.
struct Block2x2 {
  ComplexMatrix a;
  ComplexMatrix b;
  ComplexMatrix c;
  ComplexMatrix d;

  Block2x2(ComplexMatrix a_, ComplexMatrix b_, ComplexMatrix c_, ComplexMatrix d_);
  std::size_t m() const { return a.rows(); }
  std::size_t n() const { return d.rows(); }
};

ComplexMatrix embed_offdiag(const OffDiagPair& p);
ComplexMatrix embed_block(const Block2x2& b);

}  // namespace numrad
