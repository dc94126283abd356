#include <doctest.h>

#include "numrad/ensembles.hpp"
#include "numrad/linalg.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace numrad;
using testutil::kind_of;

TEST_CASE("every kind passes its defining property") {
  const EnsembleKind kinds[] = {EnsembleKind::ginibre, EnsembleKind::hermitian,   EnsembleKind::psd,
                                EnsembleKind::unitary, EnsembleKind::normal,      EnsembleKind::contraction,
                                EnsembleKind::nilpotent_shift, EnsembleKind::zero};
  for (EnsembleKind k : kinds) {
    for (std::size_t n = 1; n <= 8; ++n) {
      for (std::uint64_t s = 0; s < 5; ++s) {
        const ComplexMatrix m = sample(k, n, n, RngStream{77, s});
        CHECK(m.rows() == n);
        CHECK(satisfies_kind(k, m));
      }
    }
  }
  const ComplexMatrix u = sample(EnsembleKind::unitary, 4, 4, RngStream{1, 2});
  CHECK(oracle::norm(DenseMatrix(u.dense().adjoint() * u.dense() - DenseMatrix::Identity(4, 4))) <= 1e-10);
  const ComplexMatrix c = sample(EnsembleKind::contraction, 2, 3, RngStream{1, 3});
  CHECK(oracle::norm(c) <= 1.0);
  const ComplexMatrix z = sample(EnsembleKind::zero, 3, 3, RngStream{1, 4});
  CHECK(z == ComplexMatrix(3, 3));
  const ComplexMatrix s = sample(EnsembleKind::scalar, 1, 1, RngStream{1, 5});
  CHECK(s.rows() == 1);
  const ComplexMatrix psd = sample(EnsembleKind::psd, 5, 5, RngStream{1, 6});
  CHECK(herm_eig(psd).values.minCoeff() >= -1e-12);
}

TEST_CASE("rectangular requests") {
  CHECK(sample(EnsembleKind::ginibre, 2, 5, RngStream{9, 0}).cols() == 5);
  CHECK(kind_of([] { sample(EnsembleKind::unitary, 2, 3, RngStream{}); }) == ErrorKind::ShapeUnsupported);
  CHECK(kind_of([] { sample(EnsembleKind::hermitian, 3, 2, RngStream{}); }) == ErrorKind::ShapeUnsupported);
  CHECK(kind_of([] { sample(EnsembleKind::scalar, 2, 2, RngStream{}); }) == ErrorKind::ShapeUnsupported);
  CHECK(kind_of([] { sample(EnsembleKind::ginibre, 0, 2, RngStream{}); }) == ErrorKind::ShapeUnsupported);
}

TEST_CASE("sampling is a pure function of the stream") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const RngStream st{123, s};
    CHECK(sample(EnsembleKind::normal, 4, 4, st) == sample(EnsembleKind::normal, 4, 4, st));
  }
  CHECK_FALSE(sample(EnsembleKind::ginibre, 3, 3, RngStream{5, 0}) == sample(EnsembleKind::ginibre, 3, 3, RngStream{5, 1}));
}

TEST_CASE("kind names round trip") {
  for (const char* name : {"ginibre", "hermitian", "psd", "unitary", "normal", "contraction", "nilpotent_shift",
                           "scalar", "zero"}) {
    const auto k = parse_ensemble(name);
    REQUIRE(k.has_value());
    CHECK(to_string(*k) == name);
  }
  CHECK_FALSE(parse_ensemble("gaussian").has_value());
}
