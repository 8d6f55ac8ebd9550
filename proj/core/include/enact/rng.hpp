#pragma once

#include <cstdint>
#include <random>

#include "enact/tensor.hpp"

namespace enact {

/// Deterministic uniform generator. Doubles are produced from the raw 64-bit
/// stream directly so sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 gen_;
};

/// splitmix64 step; used to derive independent stream seeds from one scenario seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

/// Glorot uniform fan_in x fan_out matrix, entries in +-sqrt(6/(fan_in+fan_out)).
DenseArray xavier_uniform_init(std::int64_t fan_in, std::int64_t fan_out, std::uint64_t seed);

}  // namespace enact
