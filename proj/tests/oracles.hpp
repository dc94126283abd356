#pragma once
// Independent reference computations for the tests. Nothing here calls into
// numrad's numerics: SVD instead of Gram eigenvalues, std::mt19937_64 instead
// of the library generator, dense angle scans instead of the certified engine.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "numrad/matrix.hpp"

namespace oracle {

using numrad::ComplexMatrix;
using numrad::cplx;
using numrad::DenseMatrix;
using numrad::DenseVector;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }

  DenseMatrix dense(int rows, int cols) {
    DenseMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = cplx(normal(), normal());
    return m;
  }
  ComplexMatrix matrix(int rows, int cols) { return ComplexMatrix(dense(rows, cols)); }
  ComplexMatrix hermitian(int n) {
    const DenseMatrix g = dense(n, n);
    return ComplexMatrix(DenseMatrix((g + g.adjoint()) * 0.5));
  }
  DenseVector unit(int n) {
    DenseVector v(n);
    for (int i = 0; i < n; ++i) v(i) = cplx(normal(), normal());
    return v / v.norm();
  }

 private:
  std::mt19937_64 eng_;
};

inline double norm(const DenseMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<DenseMatrix> svd(m);
  return svd.singularValues()(0);
}
inline double norm(const ComplexMatrix& m) { return norm(m.dense()); }

/// |M| = (M* M)^{1/2} from the SVD M = U S V*: |M| = V S V*.
inline DenseMatrix abs(const DenseMatrix& m) {
  Eigen::JacobiSVD<DenseMatrix> svd(m, Eigen::ComputeFullV);
  const auto& v = svd.matrixV();
  Eigen::VectorXd s = Eigen::VectorXd::Zero(m.cols());
  s.head(svd.singularValues().size()) = svd.singularValues();
  return v * s.cast<cplx>().asDiagonal() * v.adjoint();
}

/// phi applied to the eigenvalues of a Hermitian PSD matrix.
template <typename F>
DenseMatrix psd_fn(const DenseMatrix& h, F phi) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(DenseMatrix((h + h.adjoint()) * 0.5));
  Eigen::VectorXd d = es.eigenvalues();
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = phi(std::max(0.0, d(i)));
  return es.eigenvectors() * d.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

inline DenseMatrix psd_pow(const DenseMatrix& h, double e) {
  return psd_fn(h, [e](double t) { return t == 0.0 && e == 0.0 ? 1.0 : std::pow(t, e); });
}

inline double lambda_max_re(const DenseMatrix& m, double theta) {
  const DenseMatrix r = (std::polar(1.0, theta) * m + std::polar(1.0, -theta) * m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(r, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(r.rows() - 1);
}

/// Lower estimate of omega: uniform angle scan, then golden-section
/// refinement around the best few angles. Accurate to ~1e-12 relative when
/// the maximising angle is isolated.
inline double omega_scan(const DenseMatrix& m, int samples = 720) {
  std::vector<double> vals(samples);
  const double step = 2.0 * std::numbers::pi / samples;
  for (int k = 0; k < samples; ++k) vals[k] = lambda_max_re(m, k * step);
  double best = 0.0;
  for (int k = 0; k < samples; ++k) best = std::max(best, vals[k]);
  for (int k = 0; k < samples; ++k) {
    if (vals[k] < best - 0.05 * std::max(best, 1e-300)) continue;
    double a = (k - 1) * step;
    double b = (k + 1) * step;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = lambda_max_re(m, c);
    double fd = lambda_max_re(m, d);
    for (int it = 0; it < 80; ++it) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = lambda_max_re(m, c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = lambda_max_re(m, d);
      }
    }
    best = std::max({best, fc, fd});
  }
  return best;
}
inline double omega_scan(const ComplexMatrix& m, int samples = 720) { return omega_scan(m.dense(), samples); }

/// max |<M x, x>| over random unit vectors: a Monte-Carlo lower bound.
inline double omega_monte_carlo(const ComplexMatrix& m, Gen& gen, int draws) {
  double best = 0.0;
  for (int k = 0; k < draws; ++k) {
    const DenseVector x = gen.unit(static_cast<int>(m.rows()));
    best = std::max(best, std::abs(x.dot(m.dense() * x)));
  }
  return best;
}

inline DenseMatrix offdiag(const DenseMatrix& x, const DenseMatrix& y) {
  const auto m = x.rows();
  const auto n = x.cols();
  DenseMatrix t = DenseMatrix::Zero(m + n, m + n);
  t.topRightCorner(m, n) = x;
  t.bottomLeftCorner(n, m) = y;
  return t;
}

inline bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace oracle
