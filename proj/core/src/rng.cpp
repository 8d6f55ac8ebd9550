#include "enact/rng.hpp"

#include <cmath>

namespace enact {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + salt + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

DenseArray xavier_uniform_init(std::int64_t fan_in, std::int64_t fan_out, std::uint64_t seed) {
  check_arg(fan_in >= 1, "xavier_uniform_init: fan_in must be positive");
  check_arg(fan_out >= 1, "xavier_uniform_init: fan_out must be positive");
  const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  DenseArray out({static_cast<std::size_t>(fan_in), static_cast<std::size_t>(fan_out)});
  Rng rng(seed);
  for (double& v : out.data) v = rng.uniform(-bound, bound);
  return out;
}

}  // namespace enact
