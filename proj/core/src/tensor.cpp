#include "enact/tensor.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace enact {

void check_arg(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

void check_state(bool condition, const std::string& message) {
  if (!condition) throw std::runtime_error(message);
}

namespace {

std::size_t extent_product(const std::vector<std::size_t>& extents) {
  std::size_t total = 1;
  for (std::size_t e : extents) total *= e;
  return total;
}

}  // namespace

DenseArray::DenseArray(std::vector<std::size_t> extents, double fill)
    : shape(std::move(extents)), data(extent_product(shape), fill) {}

DenseArray DenseArray::from(std::vector<std::size_t> extents, std::vector<double> values) {
  check_arg(extent_product(extents) == values.size(),
            "DenseArray::from: extents do not match value count");
  DenseArray out;
  out.shape = std::move(extents);
  out.data = std::move(values);
  return out;
}

std::size_t DenseArray::extent(std::size_t axis) const {
  check_arg(axis < shape.size(), "DenseArray::extent: axis out of range");
  return shape[axis];
}

std::span<double> DenseArray::row(std::size_t i) {
  return {data.data() + i * shape[1], shape[1]};
}

std::span<const double> DenseArray::row(std::size_t i) const {
  return {data.data() + i * shape[1], shape[1]};
}

std::span<double> DenseArray::row(std::size_t n, std::size_t i) {
  return {data.data() + (n * shape[1] + i) * shape[2], shape[2]};
}

std::span<const double> DenseArray::row(std::size_t n, std::size_t i) const {
  return {data.data() + (n * shape[1] + i) * shape[2], shape[2]};
}

bool DenseArray::all_finite() const {
  for (double v : data) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void check_feature_batch(const FeatureBatch& batch, const std::string& who) {
  check_arg(batch.rank() == 3, who + ": feature batch must be rank 3 (batch x pixels x channels)");
  check_arg(batch.extent(0) >= 1 && batch.extent(1) >= 1 && batch.extent(2) >= 1,
            who + ": feature batch extents must all be nonzero");
}

}  // namespace enact
