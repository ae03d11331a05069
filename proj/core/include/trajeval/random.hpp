#pragma once

#include <cstdint>
#include <random>

namespace trajeval {

/// Portable seeded generator used for every stochastic path in the library
/// (RPE couple sampling, synthetic noise). Output is identical on every
/// platform and standard library:
///
///   * bits:     std::mt19937_64 seeded with the 64-bit seed (the engine's
///               output sequence is fixed by the C++ standard)
///   * uniform:  (bits >> 11) * 2^-53, in [0, 1)
///   * integer:  rejection sampling on the top bits, no modulo bias
///   * gaussian: Box-Muller on two uniforms, both outputs used in order
///
/// std::uniform_*_distribution and std::normal_distribution are avoided
/// because their algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_bits() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi], inclusive.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);
  double gaussian();
  double gaussian(double mean, double sigma) { return mean + sigma * gaussian(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace trajeval
