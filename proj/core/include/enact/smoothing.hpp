#pragma once

#include <span>
#include <vector>

#include "enact/information.hpp"
#include "enact/tensor.hpp"

namespace enact {

/// Normalized Gaussian taps sampled at integer offsets -ceil(3*sigma)..+ceil(3*sigma).
struct GaussianKernel {
  double sigma = 0.0;
  std::vector<double> taps;

  std::size_t radius() const { return taps.size() / 2; }
};

GaussianKernel build_kernel(double sigma);

/// Same-length 1D convolution of one row, edges replicated.
void smooth_row(std::span<const double> src, const GaussianKernel& kernel, std::span<double> dst);

/// Adjoint of smooth_row; pulls an upstream gradient back through the
/// replicate-padded convolution.
void smooth_row_adjoint(std::span<const double> upstream, const GaussianKernel& kernel,
                        std::span<double> dst);

/// Smooth every sample row. Constant rows are preserved.
InfoSignal gaussian_smooth(const InfoSignal& info, const GaussianKernel& kernel);

}  // namespace enact
