#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>

#include "numrad/linalg.hpp"

namespace numrad {

/// Nonnegative functions f, g on [0, inf) with f(t) g(t) = t.
///
/// Power pairs (f = t^a, g = t^{1-a}) carry their exponent so callers can
/// reason about homogeneity. Other pairs are accepted but only ever checked
/// on sampled points; continuity is assumed, never verified.
struct FunctionPair {
  ScalarFn f;
  ScalarFn g;
  std::string tag;
  std::optional<double> alpha;

  bool sample_validated_only() const { return !alpha.has_value(); }
};

/// Exponents with 1/p + 1/q = 1 and p, q > 1.
class HolderPair {
 public:
  /// Throws OutOfRange unless both are finite, > 1 and conjugate to 1e-12.
  HolderPair(double p, double q);
  /// q = p / (p - 1).
  static HolderPair conjugate_of(double p);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

 private:
  double p_;
  double q_;
};

/// f(t) = t^alpha, g(t) = t^{1-alpha}, with 0^0 = 1. Throws OutOfRange
/// outside [0, 1].
FunctionPair power_pair(double alpha);

struct PairValidation {
  bool ok = true;
  double max_deviation = 0.0;  // max |f(t) g(t) - t|
  bool negative = false;
  double worst_sample = 0.0;
};

/// Passes iff |f(t) g(t) - t| <= 1e-9 max(1, t) and f, g >= 0 on every sample.
PairValidation validate_pair(const FunctionPair& pair, std::span<const double> samples);

/// Pointwise (f^e, g^e), keeping 0^0 = 1.
std::pair<ScalarFn, ScalarFn> pow_of_pair(const FunctionPair& pair, double exponent);

}  // namespace numrad
