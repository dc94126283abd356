#pragma once

#include <doctest.h>

#include <initializer_list>
#include <vector>

#include "numrad/error.hpp"
#include "numrad/matrix.hpp"

namespace testutil {

inline numrad::ComplexMatrix real_matrix(std::size_t r, std::size_t c, std::initializer_list<double> vals) {
  std::vector<numrad::cplx> e(vals.begin(), vals.end());
  return numrad::ComplexMatrix(r, c, e);
}

template <typename F>
numrad::ErrorKind kind_of(const F& fn) {
  try {
    fn();
  } catch (const numrad::Error& e) {
    return e.kind();
  }
  FAIL("expected numrad::Error");
  return numrad::ErrorKind::ParseError;
}

}  // namespace testutil
