#include "trajeval/random.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace trajeval {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_int(std::uint64_t lo, std::uint64_t hi) {
  if (hi <= lo) return lo;
  const std::uint64_t span = hi - lo;
  if (span == UINT64_MAX) return engine_();
  const std::uint64_t range = span + 1;
  // Smallest all-ones mask covering range - 1, then reject overshoots.
  const int shift = std::countl_zero(span);
  for (;;) {
    const std::uint64_t v = engine_() >> shift;
    if (v < range) return lo + v;
  }
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace trajeval
