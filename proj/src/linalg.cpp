#include "numrad/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <Eigen/SVD>

#include "numrad/error.hpp"

namespace numrad {

namespace {

using Eigen::Index;

double top_eigenvalue(const DenseMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::ConvergenceFailure, "eigenvalue iteration did not converge");
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

// Eigen-backed decomposition followed by the residual contract.
HermEigen decompose(const DenseMatrix& sym) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(sym, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::ConvergenceFailure, "eigen solver did not converge");
  HermEigen out{es.eigenvalues(), es.eigenvectors()};
  const double scale = std::max(1.0, out.values.cwiseAbs().maxCoeff());
  const double n = static_cast<double>(sym.rows());
  // Frobenius norms bound the spectral norms from above.
  const DenseMatrix recon = out.vectors * out.values.cast<cplx>().asDiagonal() * out.vectors.adjoint();
  const double residual = (sym - recon).norm();
  const double ortho = (out.vectors.adjoint() * out.vectors - DenseMatrix::Identity(sym.rows(), sym.cols())).norm();
  if (residual > kEigTol * scale || ortho > kEigTol * n) {
    throw Error(ErrorKind::ConvergenceFailure, "eigendecomposition residual " + std::to_string(residual) +
                                                   " exceeds target");
  }
  return out;
}

// Clamped spectrum of a PSD matrix; `scale` is the reference magnitude for
// the clamp window.
Eigen::VectorXd clamp_spectrum(const Eigen::VectorXd& values, double scale) {
  Eigen::VectorXd out = values;
  const double floor = -kClampTol * scale;
  for (Index i = 0; i < out.size(); ++i) {
    if (out(i) < 0.0) {
      if (out(i) < floor) {
        throw Error(ErrorKind::NegativeSpectrum, "eigenvalue " + std::to_string(out(i)) + " below clamp window");
      }
      out(i) = 0.0;
    }
  }
  return out;
}

}  // namespace

ComplexMatrix adjoint(const ComplexMatrix& m) { return ComplexMatrix(DenseMatrix(m.dense().adjoint())); }

HermEigen herm_eig(const ComplexMatrix& h) {
  if (!h.is_square()) throw Error(ErrorKind::NotSquare, "herm_eig requires a square matrix");
  const DenseMatrix& a = h.dense();
  const DenseMatrix sym = (a + a.adjoint()) * 0.5;
  const DenseMatrix skew = a - a.adjoint();
  HermEigen eig = decompose(sym);
  const double norm_h = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  double asym = skew.norm();
  if (asym > kEigTol * norm_h) {
    // Frobenius is only an upper bound; settle it with the exact norm of the
    // Hermitian matrix i(H - H*).
    const DenseMatrix herm = cplx(0.0, 1.0) * skew;
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(herm, Eigen::EigenvaluesOnly);
    asym = es.eigenvalues().cwiseAbs().maxCoeff();
    if (asym > kEigTol * norm_h) {
      throw Error(ErrorKind::NotHermitian, "||H - H*|| = " + std::to_string(asym));
    }
  }
  return eig;
}

HermEigen herm_eig_unchecked(const DenseMatrix& h) { return decompose((h + h.adjoint()) * 0.5); }

TopEigen top_eigen(const DenseMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(hermitian, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::ConvergenceFailure, "eigen solver did not converge");
  const Index last = es.eigenvalues().size() - 1;
  return TopEigen{es.eigenvalues()(last), es.eigenvectors().col(last)};
}

ComplexMatrix abs_op(const ComplexMatrix& m) {
  // V diag(s) V* from the SVD keeps full accuracy for small singular values.
  Eigen::JacobiSVD<DenseMatrix> svd(m.dense(), Eigen::ComputeFullV);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(m.cols());
  s.head(svd.singularValues().size()) = svd.singularValues();
  const DenseMatrix& v = svd.matrixV();
  DenseMatrix out = v * s.cast<cplx>().asDiagonal() * v.adjoint();
  out = (0.5 * (out + out.adjoint())).eval();
  return ComplexMatrix(std::move(out));
}

ComplexMatrix fn_of_psd(const ComplexMatrix& h, const ScalarFn& phi, std::vector<double>* seen_eigenvalues) {
  HermEigen eig = herm_eig(h);
  const double scale = eig.values.cwiseAbs().maxCoeff();
  const Eigen::VectorXd lam = clamp_spectrum(eig.values, scale);
  Eigen::VectorXd mapped(lam.size());
  for (Index i = 0; i < lam.size(); ++i) {
    const double v = phi(lam(i));
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorKind::InvalidFunction, "function value " + std::to_string(v) + " at eigenvalue " +
                                                  std::to_string(lam(i)));
    }
    mapped(i) = v;
  }
  if (seen_eigenvalues != nullptr) seen_eigenvalues->insert(seen_eigenvalues->end(), lam.begin(), lam.end());
  return ComplexMatrix(DenseMatrix(eig.vectors * mapped.cast<cplx>().asDiagonal() * eig.vectors.adjoint()));
}

double spectral_norm(const DenseMatrix& m) {
  if (m.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  const DenseMatrix gram = m.rows() < m.cols() ? DenseMatrix(m * m.adjoint()) : DenseMatrix(m.adjoint() * m);
  return std::sqrt(std::max(0.0, top_eigenvalue((gram + gram.adjoint()) * 0.5)));
}

double spectral_norm(const ComplexMatrix& m) { return spectral_norm(m.dense()); }

ComplexMatrix real_part(const ComplexMatrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::NotSquare, "real_part requires a square matrix");
  return ComplexMatrix(DenseMatrix((m.dense() + m.dense().adjoint()) * 0.5));
}

ComplexMatrix imag_part(const ComplexMatrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::NotSquare, "imag_part requires a square matrix");
  return ComplexMatrix(DenseMatrix((m.dense() - m.dense().adjoint()) * cplx(0.0, -0.5)));
}

bool is_normal(const ComplexMatrix& m, double tol_rel) {
  if (!m.is_square()) return false;
  const DenseMatrix& a = m.dense();
  const double norm = spectral_norm(a);
  const DenseMatrix comm = a.adjoint() * a - a * a.adjoint();
  return spectral_norm(comm) <= tol_rel * norm * norm;
}

OffDiagPair::OffDiagPair(ComplexMatrix x_, ComplexMatrix y_) : x(std::move(x_)), y(std::move(y_)) {
  if (x.rows() != y.cols() || x.cols() != y.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "off-diagonal pair needs X: m x n and Y: n x m");
  }
}

Block2x2::Block2x2(ComplexMatrix a_, ComplexMatrix b_, ComplexMatrix c_, ComplexMatrix d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
  const std::size_t m = a.rows();
  const std::size_t n = d.rows();
  if (!a.is_square() || !d.is_square() || b.rows() != m || b.cols() != n || c.rows() != n || c.cols() != m) {
    throw Error(ErrorKind::DimensionMismatch, "block matrix needs A: m x m, B: m x n, C: n x m, D: n x n");
  }
}

ComplexMatrix embed_offdiag(const OffDiagPair& p) {
  const Index m = static_cast<Index>(p.m());
  const Index n = static_cast<Index>(p.n());
  DenseMatrix t = DenseMatrix::Zero(m + n, m + n);
  t.block(0, m, m, n) = p.x.dense();
  t.block(m, 0, n, m) = p.y.dense();
  return ComplexMatrix(std::move(t));
}

ComplexMatrix embed_block(const Block2x2& b) {
  const Index m = static_cast<Index>(b.m());
  const Index n = static_cast<Index>(b.n());
  DenseMatrix t(m + n, m + n);
  t.block(0, 0, m, m) = b.a.dense();
  t.block(0, m, m, n) = b.b.dense();
  t.block(m, 0, n, m) = b.c.dense();
  t.block(m, m, n, n) = b.d.dense();
  return ComplexMatrix(std::move(t));
}

}  // namespace numrad
