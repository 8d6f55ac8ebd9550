#pragma once

#include <cstdint>
#include <span>

#include "enact/rng.hpp"
#include "enact/tensor.hpp"

namespace enact {

/// Scalar projection of a feature vector: one weight column plus a bias.
struct LinearHead {
  DenseArray weights;  // channels x 1
  double bias = 0.0;

  static LinearHead init(std::int64_t channels, std::uint64_t seed) {
    return {xavier_uniform_init(channels, 1, seed), 0.0};
  }

  std::size_t channels() const { return weights.rank() == 2 ? weights.extent(0) : 0; }

  double apply(std::span<const double> feature) const {
    double acc = bias;
    for (std::size_t c = 0; c < feature.size(); ++c) acc += feature[c] * weights.data[c];
    return acc;
  }
};

}  // namespace enact
