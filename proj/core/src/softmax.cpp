#include "enact/softmax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "enact/tensor.hpp"

namespace enact {

std::vector<double> stable_softmax(std::span<const double> values) {
  check_arg(!values.empty(), "stable_softmax: empty input");
  std::vector<double> out(values.begin(), values.end());
  stable_softmax_inplace(out);
  return out;
}

std::vector<double> stable_softmax(std::span<const double> values,
                                   std::span<const std::uint8_t> mask) {
  check_arg(values.size() == mask.size(), "stable_softmax: mask length mismatch");
  double max_val = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (mask[i]) {
      max_val = std::max(max_val, values[i]);
      any = true;
    }
  }
  check_arg(any, "stable_softmax: every entry is masked");

  std::vector<double> out(values.size(), 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (mask[i]) {
      out[i] = std::exp(values[i] - max_val);
      sum += out[i];
    }
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (mask[i]) out[i] /= sum;
  }
  return out;
}

void stable_softmax_inplace(std::span<double> values) {
  double max_val = -std::numeric_limits<double>::infinity();
  for (double v : values) max_val = std::max(max_val, v);
  check_state(std::isfinite(max_val), "stable_softmax: non-finite input");
  double sum = 0.0;
  for (double& v : values) {
    v = std::exp(v - max_val);
    sum += v;
  }
  // NaN inputs slip past the max scan (any comparison with NaN is false)
  // but always poison the sum.
  check_state(std::isfinite(sum), "stable_softmax: non-finite input");
  for (double& v : values) v /= sum;
}

void softmax_backward_into(std::span<const double> probs, std::span<const double> upstream,
                           std::span<double> out) {
  double dot = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) dot += probs[i] * upstream[i];
  for (std::size_t i = 0; i < probs.size(); ++i) out[i] = probs[i] * (upstream[i] - dot);
}

std::vector<double> softmax_backward(std::span<const double> probs,
                                     std::span<const double> upstream) {
  check_arg(probs.size() == upstream.size(), "softmax_backward: length mismatch");
  std::vector<double> out(probs.size());
  softmax_backward_into(probs, upstream, out);
  return out;
}

}  // namespace enact
