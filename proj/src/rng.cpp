#include "numrad/rng.hpp"

#include <cmath>
#include <numbers>

namespace numrad {

RngStream derive(const RngStream& stream, std::uint64_t label) noexcept {
  const std::uint64_t salt = mix64(stream.stream_index * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL);
  return RngStream{stream.master_seed, mix64(salt ^ mix64(label + 0x2545f4914f6cdd1dULL))};
}

Rng::Rng(const RngStream& stream) noexcept
    : state_(mix64(stream.master_seed) ^ mix64(stream.stream_index ^ 0xa0761d6478bd642fULL)) {}

std::uint64_t Rng::next_u64() noexcept {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

cplx Rng::complex_normal() noexcept {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

std::size_t Rng::index(std::size_t n) noexcept {
  return n == 0 ? 0 : static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

}  // namespace numrad
