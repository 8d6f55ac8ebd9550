#pragma once

#include <cstdint>
#include <vector>

#include "enact/tensor.hpp"

namespace enact {

/// Half-open pixel range with a curvature sign label.
struct Run {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive
  int sign = +1;
};

/// Per-sample contiguous runs tiling [0, pixels). Adjacent runs carry opposite
/// signs; every run is non-empty. Each run becomes one cluster.
struct RegionPartition {
  std::size_t pixels = 0;
  std::vector<std::vector<Run>> samples;

  std::size_t batch() const { return samples.size(); }
  std::vector<std::size_t> cluster_counts() const;
  std::size_t total_clusters() const;
  void validate() const;
};

/// Sign labels per pixel, +1 or -1.
struct SignField {
  std::size_t batch = 0;
  std::size_t pixels = 0;
  std::vector<std::int8_t> values;

  std::int8_t at(std::size_t n, std::size_t i) const { return values[n * pixels + i]; }
};

/// Discrete second derivative with the [-1, 2, -1] kernel, boundaries
/// replicated. Needs at least 3 pixels per sample. Note the kernel is the
/// negated second difference: upward-curving (convex) signals give negative
/// output.
DenseArray second_derivative(const DenseArray& signal);

/// +1 where d2 < 0 (convex), -1 where d2 > 0 (concave). Exact zeros inherit
/// the label of the nearest preceding nonzero entry, +1 at a sample start.
SignField sign_step(const DenseArray& d2);

/// Maximal runs of equal sign, in pixel order.
RegionPartition partition_runs(const SignField& signs);

/// One run spanning the whole pixel axis, for each sample. Degenerate path
/// for signals too short to differentiate.
RegionPartition single_run_partition(std::size_t batch, std::size_t pixels);

/// Every pixel its own run, signs alternating. The no-compression reference
/// partition used by the equivalence oracle.
RegionPartition singleton_partition(std::size_t batch, std::size_t pixels);

}  // namespace enact
