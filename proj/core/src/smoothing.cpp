#include "enact/smoothing.hpp"

#include <algorithm>
#include <cmath>

namespace enact {

GaussianKernel build_kernel(double sigma) {
  check_arg(sigma > 0.0, "build_kernel: sigma must be positive");
  const auto radius = static_cast<std::size_t>(std::ceil(3.0 * sigma));
  GaussianKernel kernel;
  kernel.sigma = sigma;
  kernel.taps.resize(2 * radius + 1);
  double sum = 0.0;
  for (std::size_t t = 0; t < kernel.taps.size(); ++t) {
    const double offset = static_cast<double>(t) - static_cast<double>(radius);
    kernel.taps[t] = std::exp(-offset * offset / (2.0 * sigma * sigma));
    sum += kernel.taps[t];
  }
  for (double& tap : kernel.taps) tap /= sum;
  return kernel;
}

void smooth_row(std::span<const double> src, const GaussianKernel& kernel,
                std::span<double> dst) {
  check_arg(src.size() == dst.size() && !src.empty(), "smooth_row: bad row extents");
  const std::ptrdiff_t len = static_cast<std::ptrdiff_t>(src.size());
  const std::ptrdiff_t radius = static_cast<std::ptrdiff_t>(kernel.radius());

  // Explicit replicate-padded copy, then a pure inner product per pixel.
  std::vector<double> padded(src.size() + 2 * kernel.radius());
  std::fill_n(padded.begin(), kernel.radius(), src.front());
  std::copy(src.begin(), src.end(), padded.begin() + radius);
  std::fill_n(padded.begin() + radius + len, kernel.radius(), src.back());

  for (std::ptrdiff_t i = 0; i < len; ++i) {
    double acc = 0.0;
    for (std::size_t t = 0; t < kernel.taps.size(); ++t)
      acc += kernel.taps[t] * padded[static_cast<std::size_t>(i) + t];
    dst[static_cast<std::size_t>(i)] = acc;
  }
}

void smooth_row_adjoint(std::span<const double> upstream, const GaussianKernel& kernel,
                        std::span<double> dst) {
  check_arg(upstream.size() == dst.size() && !upstream.empty(),
            "smooth_row_adjoint: bad row extents");
  const std::ptrdiff_t len = static_cast<std::ptrdiff_t>(upstream.size());
  const std::ptrdiff_t radius = static_cast<std::ptrdiff_t>(kernel.radius());
  std::fill(dst.begin(), dst.end(), 0.0);
  for (std::ptrdiff_t i = 0; i < len; ++i) {
    for (std::size_t t = 0; t < kernel.taps.size(); ++t) {
      std::ptrdiff_t j = i + static_cast<std::ptrdiff_t>(t) - radius;
      j = std::clamp<std::ptrdiff_t>(j, 0, len - 1);
      dst[static_cast<std::size_t>(j)] += kernel.taps[t] * upstream[static_cast<std::size_t>(i)];
    }
  }
}

InfoSignal gaussian_smooth(const InfoSignal& info, const GaussianKernel& kernel) {
  check_arg(info.values.rank() == 2, "gaussian_smooth: signal must be batch x pixels");
  check_arg(info.pixels() >= 1, "gaussian_smooth: empty pixel axis");
  DenseArray out({info.batch(), info.pixels()});
  for (std::size_t s = 0; s < info.batch(); ++s)
    smooth_row(info.values.row(s), kernel, out.row(s));
  return {std::move(out), SignalKind::smoothed_information};
}

}  // namespace enact
