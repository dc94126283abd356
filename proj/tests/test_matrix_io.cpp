#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "numrad/matrix_io.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace numrad;
using testutil::kind_of;

TEST_CASE("format and parse round trip bit-exactly") {
  oracle::Gen gen(31);
  for (int trial = 0; trial < 200; ++trial) {
    DenseMatrix d = gen.dense(gen.integer(1, 5), gen.integer(1, 5));
    d *= std::pow(10.0, gen.integer(-300, 300));
    const ComplexMatrix m(d);
    const ComplexMatrix back = parse_matrix(format_matrix(m));
    CHECK(back == m);
    CHECK(digest(back) == digest(m));
  }
  const ComplexMatrix tiny = testutil::real_matrix(1, 2, {5e-324, -0.0});
  CHECK(parse_matrix(format_matrix(tiny)) == tiny);
}

TEST_CASE("files round trip") {
  const auto path = std::filesystem::temp_directory_path() / "numrad_io_test.json";
  oracle::Gen gen(32);
  const ComplexMatrix m = gen.matrix(3, 2);
  write_matrix(path, m);
  CHECK(read_matrix(path) == m);
  std::filesystem::remove(path);
  CHECK(kind_of([&] { read_matrix(path); }) == ErrorKind::ParseError);
}

TEST_CASE("malformed matrix files") {
  CHECK(kind_of([] { parse_matrix("{\"rows\": 2,"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_matrix("[1, 2]"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_matrix(R"({"rows":1,"cols":1,"data":[[1]]})"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_matrix(R"({"rows":0,"cols":1,"data":[]})"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_matrix(R"({"rows":1,"cols":2,"data":[[1,0]]})"); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { parse_matrix(R"({"rows":1,"cols":1,"data":[["x",0]]})"); }) == ErrorKind::ParseError);
  const ComplexMatrix ok = parse_matrix(R"({"rows":1,"cols":2,"data":[[1,-2],[0.5,0]]})");
  CHECK(ok(0, 0) == cplx(1, -2));
  CHECK(ok(0, 1) == cplx(0.5, 0));
}
