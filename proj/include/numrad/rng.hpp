#pragma once

#include <cstdint>

#include "numrad/matrix.hpp"

namespace numrad {

/// Addressable random stream: equal (master_seed, stream_index) always give
/// the same sequence, on every platform.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  friend bool operator==(const RngStream&, const RngStream&) = default;
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Child stream; distinct labels give distinct children.
RngStream derive(const RngStream& stream, std::uint64_t label) noexcept;

/// splitmix64 generator seeded from a stream, with its own Box-Muller so the
/// normal variates do not depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(const RngStream& stream) noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;
  double normal() noexcept;
  /// Standard complex Gaussian, E|z|^2 = 1.
  cplx complex_normal() noexcept;
  /// Uniform index in [0, n).
  std::size_t index(std::size_t n) noexcept;

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace numrad
