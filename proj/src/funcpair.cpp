#include "numrad/funcpair.hpp"

#include <cmath>
#include <sstream>

#include "numrad/error.hpp"

namespace numrad {

HolderPair::HolderPair(double p, double q) : p_(p), q_(q) {
  if (!std::isfinite(p) || !std::isfinite(q) || p <= 1.0 || q <= 1.0) {
    throw Error(ErrorKind::OutOfRange, "Hoelder exponents must be finite and > 1");
  }
  if (std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12) {
    throw Error(ErrorKind::OutOfRange, "Hoelder exponents must satisfy 1/p + 1/q = 1");
  }
}

HolderPair HolderPair::conjugate_of(double p) {
  if (!std::isfinite(p) || p <= 1.0) throw Error(ErrorKind::OutOfRange, "Hoelder p must be finite and > 1");
  return HolderPair(p, p / (p - 1.0));
}

FunctionPair power_pair(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorKind::OutOfRange, "power pair exponent must lie in [0, 1]");
  std::ostringstream tag;
  tag << "power alpha=" << alpha;
  // std::pow(0, 0) == 1, which is the convention we want at the endpoints.
  return FunctionPair{[alpha](double t) { return std::pow(t, alpha); },
                      [alpha](double t) { return std::pow(t, 1.0 - alpha); }, tag.str(), alpha};
}

PairValidation validate_pair(const FunctionPair& pair, std::span<const double> samples) {
  PairValidation report;
  for (double t : samples) {
    const double f = pair.f(t);
    const double g = pair.g(t);
    if (!(f >= 0.0) || !(g >= 0.0)) {
      report.negative = true;
      report.ok = false;
      report.worst_sample = t;
      continue;
    }
    const double dev = std::abs(f * g - t);
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      if (dev > 1e-9 * std::max(1.0, t)) {
        report.ok = false;
        report.worst_sample = t;
      }
    }
  }
  return report;
}

std::pair<ScalarFn, ScalarFn> pow_of_pair(const FunctionPair& pair, double exponent) {
  if (!std::isfinite(exponent) || exponent < 0.0) throw Error(ErrorKind::OutOfRange, "exponent must be finite and >= 0");
  if (pair.alpha) {
    const double a = *pair.alpha;
    return {[a, exponent](double t) { return std::pow(t, a * exponent); },
            [a, exponent](double t) { return std::pow(t, (1.0 - a) * exponent); }};
  }
  ScalarFn f = pair.f;
  ScalarFn g = pair.g;
  return {[f, exponent](double t) { return std::pow(f(t), exponent); },
          [g, exponent](double t) { return std::pow(g(t), exponent); }};
}

}  // namespace numrad
