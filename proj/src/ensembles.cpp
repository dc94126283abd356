#include "numrad/ensembles.hpp"

#include <array>
#include <cmath>

#include "numrad/error.hpp"
#include "numrad/linalg.hpp"

namespace numrad {

namespace {

constexpr std::array<std::pair<EnsembleKind, std::string_view>, 9> kNames{{
    {EnsembleKind::ginibre, "ginibre"},
    {EnsembleKind::hermitian, "hermitian"},
    {EnsembleKind::psd, "psd"},
    {EnsembleKind::unitary, "unitary"},
    {EnsembleKind::normal, "normal"},
    {EnsembleKind::contraction, "contraction"},
    {EnsembleKind::nilpotent_shift, "nilpotent_shift"},
    {EnsembleKind::scalar, "scalar"},
    {EnsembleKind::zero, "zero"},
}};

constexpr double kCheckTol = 1e-10;

DenseMatrix ginibre(Rng& rng, Eigen::Index m, Eigen::Index n) {
  DenseMatrix g(m, n);
  // Row-major fill so the sequence does not depend on Eigen's storage order.
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  return g;
}

// QR of a Ginibre matrix with the phases of diag(R) pushed into Q.
DenseMatrix haar_unitary(Rng& rng, Eigen::Index n) {
  const DenseMatrix g = ginibre(rng, n, n);
  Eigen::HouseholderQR<DenseMatrix> qr(g);
  DenseMatrix q = qr.householderQ() * DenseMatrix::Identity(n, n);
  const DenseMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    const double mod = std::abs(d);
    if (mod > 0.0) q.col(j) *= d / mod;
  }
  return q;
}

double scale_of(const ComplexMatrix& m) { return std::max(1.0, spectral_norm(m)); }

}  // namespace

std::string_view to_string(EnsembleKind kind) noexcept {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return "unknown";
}

std::optional<EnsembleKind> parse_ensemble(std::string_view name) noexcept {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  return std::nullopt;
}

bool square_only(EnsembleKind kind) noexcept {
  switch (kind) {
    case EnsembleKind::hermitian:
    case EnsembleKind::psd:
    case EnsembleKind::unitary:
    case EnsembleKind::normal:
    case EnsembleKind::nilpotent_shift:
    case EnsembleKind::scalar:
      return true;
    default:
      return false;
  }
}

bool satisfies_kind(EnsembleKind kind, const ComplexMatrix& mat) {
  const DenseMatrix& a = mat.dense();
  const double scale = scale_of(mat);
  switch (kind) {
    case EnsembleKind::ginibre:
      return true;
    case EnsembleKind::hermitian:
      return mat.is_square() && spectral_norm(DenseMatrix(a - a.adjoint())) <= kCheckTol * scale;
    case EnsembleKind::psd: {
      if (!mat.is_square() || spectral_norm(DenseMatrix(a - a.adjoint())) > kCheckTol * scale) return false;
      const HermEigen eig = herm_eig(mat);
      return eig.values.minCoeff() >= -kCheckTol * scale;
    }
    case EnsembleKind::unitary:
      return mat.is_square() &&
             spectral_norm(DenseMatrix(a.adjoint() * a - DenseMatrix::Identity(a.rows(), a.cols()))) <= kCheckTol;
    case EnsembleKind::normal:
      return is_normal(mat, kCheckTol);
    case EnsembleKind::contraction:
      return spectral_norm(mat) <= 1.0;
    case EnsembleKind::nilpotent_shift: {
      if (!mat.is_square()) return false;
      DenseMatrix expect = DenseMatrix::Zero(a.rows(), a.cols());
      for (Eigen::Index i = 0; i + 1 < a.rows(); ++i) expect(i, i + 1) = 1.0;
      return a == expect;
    }
    case EnsembleKind::scalar:
      return mat.rows() == 1 && mat.cols() == 1;
    case EnsembleKind::zero:
      return a.cwiseAbs().maxCoeff() == 0.0;
  }
  return false;
}

ComplexMatrix sample(EnsembleKind kind, std::size_t m, std::size_t n, const RngStream& stream) {
  if (m == 0 || n == 0) throw Error(ErrorKind::ShapeUnsupported, "ensemble dimensions must be positive");
  if (square_only(kind) && m != n) {
    throw Error(ErrorKind::ShapeUnsupported, std::string(to_string(kind)) + " requires a square shape");
  }
  if (kind == EnsembleKind::scalar && m != 1) {
    throw Error(ErrorKind::ShapeUnsupported, "scalar ensemble produces 1 x 1 matrices");
  }
  Rng rng(stream);
  const auto rows = static_cast<Eigen::Index>(m);
  const auto cols = static_cast<Eigen::Index>(n);
  DenseMatrix out;
  switch (kind) {
    case EnsembleKind::ginibre:
    case EnsembleKind::scalar:
      out = ginibre(rng, rows, cols);
      break;
    case EnsembleKind::hermitian: {
      const DenseMatrix g = ginibre(rng, rows, rows);
      out = (g + g.adjoint()) * 0.5;
      break;
    }
    case EnsembleKind::psd: {
      const DenseMatrix g = ginibre(rng, rows, rows);
      out = g.adjoint() * g / static_cast<double>(m);
      out = (out + out.adjoint()) * 0.5;
      break;
    }
    case EnsembleKind::unitary:
      out = haar_unitary(rng, rows);
      break;
    case EnsembleKind::normal: {
      const DenseMatrix u = haar_unitary(rng, rows);
      Eigen::VectorXcd d(rows);
      for (Eigen::Index i = 0; i < rows; ++i) d(i) = rng.complex_normal();
      out = u * d.asDiagonal() * u.adjoint();
      break;
    }
    case EnsembleKind::contraction: {
      const DenseMatrix g = ginibre(rng, rows, cols);
      const double nrm = spectral_norm(g);
      out = nrm > 0.0 ? DenseMatrix(g * (std::min(1.0, nrm) * (1.0 - 1e-12) / nrm)) : g;
      break;
    }
    case EnsembleKind::nilpotent_shift:
      out = DenseMatrix::Zero(rows, rows);
      for (Eigen::Index i = 0; i + 1 < rows; ++i) out(i, i + 1) = 1.0;
      break;
    case EnsembleKind::zero:
      out = DenseMatrix::Zero(rows, cols);
      break;
  }
  ComplexMatrix result(std::move(out));
  if (!satisfies_kind(kind, result)) {
    throw Error(ErrorKind::ConvergenceFailure, std::string(to_string(kind)) + " draw failed its post-check");
  }
  return result;
}

}  // namespace numrad
