#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "numrad/ensembles.hpp"
#include "numrad/radius.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace numrad;
using testutil::kind_of;
using testutil::real_matrix;

namespace {

CertifiedRadius omega_rel(const ComplexMatrix& m, double rel = 1e-9) {
  return omega(m, rel * std::max(1.0, spectral_norm(m)));
}

}  // namespace

TEST_CASE("omega on analytically known matrices") {
  const CertifiedRadius shift = omega(real_matrix(2, 2, {0, 1, 0, 0}), 1e-8);
  CHECK(shift.lo <= 0.5 + 1e-15);
  CHECK(shift.hi >= 0.5 - 1e-15);
  CHECK(shift.hi - shift.lo <= 1e-8);

  const CertifiedRadius diag = omega(real_matrix(2, 2, {1, 0, 0, -3}), 1e-9);
  CHECK(std::abs(diag.lo - 3.0) <= 1e-9);

  const CertifiedRadius zero = omega(ComplexMatrix(3, 3), 1e-9);
  CHECK(zero.lo == 0.0);
  CHECK(zero.hi == 0.0);

  const CertifiedRadius scalar = omega(ComplexMatrix::scalar(cplx(3.0, -4.0)), 1e-9);
  CHECK(std::abs(scalar.lo - 5.0) <= 1e-9);
  CHECK(scalar.hi >= 5.0);

  // Rotations leave the disk of a scaled shift invariant: omega = 1.
  const CertifiedRadius shift2 = omega(real_matrix(2, 2, {0, 2, 0, 0}), 1e-9);
  CHECK(shift2.lo <= 1.0 + 1e-15);
  CHECK(shift2.hi >= 1.0 - 1e-15);
}

TEST_CASE("omega witness reproduces the lower endpoint") {
  oracle::Gen gen(41);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen.integer(1, 6);
    const ComplexMatrix m = gen.matrix(n, n);
    const CertifiedRadius w = omega_rel(m);
    REQUIRE(w.witness.size() == n);
    CHECK(std::abs(w.witness.norm() - 1.0) <= 1e-12);
    CHECK(std::abs(std::abs(w.witness.dot(m.dense() * w.witness)) - w.lo) <= 1e-10 * std::max(1.0, w.lo));
    CHECK(w.lo <= w.hi);
    CHECK(w.hi - w.lo <= 1e-9 * std::max(1.0, spectral_norm(m)));
  }
}

TEST_CASE("omega brackets independent estimates") {
  oracle::Gen gen(42);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = gen.integer(2, 6);
    const ComplexMatrix m = gen.matrix(n, n);
    const CertifiedRadius w = omega_rel(m);
    const double scan = oracle::omega_scan(m);
    const double slack = 1e-9 * std::max(1.0, spectral_norm(m));
    CHECK(scan <= w.hi + slack);
    CHECK(scan >= w.lo - 1e-7 * std::max(1.0, spectral_norm(m)));
    CHECK(oracle::omega_monte_carlo(m, gen, 2000) <= w.hi + slack);
  }
}

TEST_CASE("omega of Hermitian matrices is the spectral radius") {
  oracle::Gen gen(43);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix h = gen.hermitian(gen.integer(2, 8));
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h.dense());
    const double rho = es.eigenvalues().cwiseAbs().maxCoeff();
    const CertifiedRadius w = omega_rel(h);
    CHECK(std::abs(w.lo - rho) <= 1e-8 * std::max(1.0, rho));
    CHECK(std::abs(w.hi - rho) <= 1e-8 * std::max(1.0, rho));
  }
}

TEST_CASE("norm sandwich, power inequality and unitary invariance") {
  oracle::Gen gen(44);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = gen.integer(1, 6);
    const ComplexMatrix t = gen.matrix(n, n);
    const double nrm = oracle::norm(t);
    const double scale = std::max(1.0, nrm);
    const CertifiedRadius w = omega_rel(t);
    CHECK(nrm / 2.0 <= w.hi + 1e-12 * scale);
    CHECK(w.lo <= nrm + 1e-12 * scale);

    const CertifiedRadius w2 = omega_rel(t * t);
    CHECK(w2.hi <= w.hi * w.hi + 1e-8 * std::max(1.0, nrm * nrm));

    const ComplexMatrix u = sample(EnsembleKind::unitary, n, n, RngStream{44, static_cast<std::uint64_t>(trial)});
    const CertifiedRadius wu = omega_rel(adjoint(u) * t * u);
    CHECK(wu.overlaps(w, 1e-9 * scale));
  }
}

TEST_CASE("rotation identity for [[0, X], [X, 0]]") {
  const auto [a, b] = omega_offdiag_symmetric_check(ComplexMatrix::scalar(1.0), 1e-9);
  CHECK(std::abs(a.lo - 1.0) <= 1e-9);
  CHECK(b.overlaps(a, 1e-9));

  const auto [c, d] = omega_offdiag_symmetric_check(real_matrix(2, 2, {0, 2, 0, 0}), 1e-9);
  CHECK(std::abs(c.lo - 1.0) <= 1e-9);
  CHECK(std::abs(d.lo - 1.0) <= 1e-9);

  oracle::Gen gen(45);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix x = gen.matrix(3, 3);
    const double tol = 1e-9 * std::max(1.0, spectral_norm(x));
    const auto [w1, w2] = omega_offdiag_symmetric_check(x, tol);
    CHECK(w1.overlaps(w2, tol));
  }
}

TEST_CASE("omega preconditions") {
  CHECK(kind_of([] { omega(ComplexMatrix(2, 3), 1e-9); }) == ErrorKind::NotSquare);
  CHECK(kind_of([] { omega(ComplexMatrix::identity(2), 1e-14); }) == ErrorKind::OutOfRange);
  CHECK(kind_of([] { omega(ComplexMatrix::identity(2), -1.0); }) == ErrorKind::OutOfRange);
  // A disk-shaped range needs every direction refined; a tiny budget cannot do it.
  CHECK(kind_of([] { omega(real_matrix(2, 2, {0, 1, 0, 0}), 1e-10, 100); }) == ErrorKind::ToleranceUnreachable);
}

TEST_CASE("omega_p collapses to omega for one operator") {
  oracle::Gen gen(46);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = gen.integer(1, 5);
    const std::vector<ComplexMatrix> ops{gen.matrix(n, n)};
    const double p = 1.0 + gen.uniform(0.0, 3.0);
    const CertifiedRadius w = omega_rel(ops[0]);
    const OmegaPEstimate est = omega_p(ops, p, RngStream{46, static_cast<std::uint64_t>(trial)});
    CHECK(est.value <= w.hi + 1e-9);
    CHECK(std::abs(est.value - w.lo) <= 1e-6 * std::max(1.0, w.lo));
  }
}

TEST_CASE("omega_p on identities and diagonal projections") {
  const ComplexMatrix eye = ComplexMatrix::identity(2);
  for (double p : {1.0, 2.0, 3.0}) {
    const std::vector<ComplexMatrix> two{eye, eye};
    CHECK(omega_p(two, p, RngStream{1, 0}).value == doctest::Approx(std::pow(2.0, 1.0 / p)).epsilon(1e-12));
    const std::vector<ComplexMatrix> one{eye};
    CHECK(omega_p(one, p, RngStream{1, 1}).value == doctest::Approx(1.0).epsilon(1e-12));
  }
  const std::vector<ComplexMatrix> proj{real_matrix(2, 2, {1, 0, 0, 0}), real_matrix(2, 2, {0, 0, 0, 1})};
  // (t^p + (1 - t)^p)^{1/p} on [0, 1] peaks at the endpoints with value 1.
  for (double p : {1.0, 2.0, 3.0}) CHECK(omega_p(proj, p, RngStream{2, 0}).value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("omega_p agrees with the brute-force sphere search") {
  oracle::Gen gen(47);
  for (int trial = 0; trial < 15; ++trial) {
    const int d = gen.integer(1, 3);
    const int count = gen.integer(1, 3);
    const double p = static_cast<double>(gen.integer(1, 3));
    std::vector<ComplexMatrix> ops;
    for (int i = 0; i < count; ++i) ops.push_back(gen.matrix(d, d));
    const double brute = omega_p_bruteforce(ops, p, 24);
    const double est = omega_p(ops, p, RngStream{47, static_cast<std::uint64_t>(trial)}).value;
    CHECK(std::abs(est - brute) <= 1e-4 * std::max(1.0, brute));
  }
  const std::vector<ComplexMatrix> big{ComplexMatrix::identity(4)};
  CHECK(kind_of([&] { omega_p_bruteforce(big, 2.0, 8); }) == ErrorKind::DimensionTooLarge);
}

TEST_CASE("omega_p gradient matches central differences") {
  oracle::Gen gen(48);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen.integer(1, 4);
    const double p = gen.uniform(1.0, 4.0);
    std::vector<ComplexMatrix> ops;
    for (int i = 0, k = gen.integer(1, 3); i < k; ++i) ops.push_back(gen.matrix(n, n));
    const DenseVector x = gen.unit(n);
    const DenseVector grad = omega_p_gradient(ops, p, x);
    const DenseVector dir = gen.unit(n);
    const double h = 1e-6;
    const double fd = (omega_p_objective(ops, p, x + h * dir) - omega_p_objective(ops, p, x - h * dir)) / (2.0 * h);
    const double an = std::real(grad.dot(dir));
    CHECK(std::abs(fd - an) <= 1e-5 * std::max(1.0, std::abs(an)));
  }
}

TEST_CASE("omega_p preconditions") {
  const std::vector<ComplexMatrix> none;
  CHECK(kind_of([&] { omega_p(none, 2.0, RngStream{}); }) == ErrorKind::EmptyList);
  const std::vector<ComplexMatrix> mixed{ComplexMatrix::identity(2), ComplexMatrix::identity(3)};
  CHECK(kind_of([&] { omega_p(mixed, 2.0, RngStream{}); }) == ErrorKind::DimensionMismatch);
  const std::vector<ComplexMatrix> one{ComplexMatrix::identity(2)};
  CHECK(kind_of([&] { omega_p(one, 0.5, RngStream{}); }) == ErrorKind::OutOfRange);
  const std::vector<ComplexMatrix> rect{ComplexMatrix(2, 3)};
  CHECK(kind_of([&] { omega_p(rect, 2.0, RngStream{}); }) == ErrorKind::NotSquare);
}

TEST_CASE("omega_p is deterministic in its stream") {
  oracle::Gen gen(49);
  const std::vector<ComplexMatrix> ops{gen.matrix(4, 4), gen.matrix(4, 4)};
  const OmegaPEstimate a = omega_p(ops, 2.0, RngStream{9, 9});
  const OmegaPEstimate b = omega_p(ops, 2.0, RngStream{9, 9});
  CHECK(a.value == b.value);
  CHECK(a.witness == b.witness);
}
