#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace enact {

void check_arg(bool condition, const std::string& message);
void check_state(bool condition, const std::string& message);

/// Dense row-major array of 64-bit reals.
struct DenseArray {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  DenseArray() = default;
  explicit DenseArray(std::vector<std::size_t> extents, double fill = 0.0);

  // Takes ownership of `values`; extents must multiply out to values.size().
  static DenseArray from(std::vector<std::size_t> extents, std::vector<double> values);

  std::size_t rank() const { return shape.size(); }
  std::size_t size() const { return data.size(); }
  std::size_t extent(std::size_t axis) const;

  double& operator()(std::size_t i) { return data[i]; }
  double operator()(std::size_t i) const { return data[i]; }
  double& operator()(std::size_t i, std::size_t j) { return data[i * shape[1] + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * shape[1] + j]; }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data[(i * shape[1] + j) * shape[2] + k];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data[(i * shape[1] + j) * shape[2] + k];
  }

  /// Row i of a rank-2 array.
  std::span<double> row(std::size_t i);
  std::span<const double> row(std::size_t i) const;
  /// Innermost vector (n, i, :) of a rank-3 array.
  std::span<double> row(std::size_t n, std::size_t i);
  std::span<const double> row(std::size_t n, std::size_t i) const;

  bool all_finite() const;
};

/// Batch of flattened feature maps: batch x pixels x channels.
using FeatureBatch = DenseArray;

void check_feature_batch(const FeatureBatch& batch, const std::string& who);

}  // namespace enact
