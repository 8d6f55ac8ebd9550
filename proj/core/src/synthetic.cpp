#include "enact/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "enact/rng.hpp"

namespace enact {
namespace {

constexpr double kNoiseAmplitude = 0.05;
constexpr double kBlobAmpLo = 0.8;
constexpr double kBlobAmpHi = 1.6;
constexpr double kSignatureLo = 0.2;
constexpr double kSignatureHi = 1.0;

}  // namespace

bool SyntheticScene::on_blob(std::size_t sample, std::size_t pixel) const {
  return blob_mask[sample * envelope.shape[1] + pixel] != 0;
}

SyntheticScene make_scene(const ScenarioConfig& config) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.n);
  const auto h = static_cast<std::size_t>(config.h);
  const auto w = static_cast<std::size_t>(config.w);
  const auto d = static_cast<std::size_t>(config.d);
  const std::size_t hw = h * w;

  SyntheticScene scene;
  scene.features = DenseArray({n, hw, d});
  scene.blob_part = DenseArray({n, hw, d});
  scene.envelope = DenseArray({n, hw});
  scene.blob_mask.assign(n * hw, 0);

  const double side = static_cast<double>(std::min(h, w));
  const double spread_lo = std::max(0.8, side / 8.0);
  const double spread_hi = std::max(spread_lo + 0.5, side / 5.0);
  const double mask_level = std::exp(-2.0);

  Rng rng(config.seed);
  std::vector<double> signature(d);

  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < hw; ++i) {
      for (std::size_t c = 0; c < d; ++c) {
        scene.features(s, i, c) = rng.uniform(-kNoiseAmplitude, kNoiseAmplitude);
      }
    }
    for (std::int64_t b = 0; b < config.blobs; ++b) {
      const double cy = rng.uniform(0.0, static_cast<double>(h));
      const double cx = rng.uniform(0.0, static_cast<double>(w));
      const double spread = rng.uniform(spread_lo, spread_hi);
      const double amp = rng.uniform(kBlobAmpLo, kBlobAmpHi);
      double norm = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        signature[c] = rng.uniform(kSignatureLo, kSignatureHi);
        norm += signature[c] * signature[c];
      }
      norm = std::sqrt(norm);
      for (std::size_t c = 0; c < d; ++c) signature[c] /= norm;

      const double inv_two_var = 1.0 / (2.0 * spread * spread);
      for (std::size_t y = 0; y < h; ++y) {
        const double dy = static_cast<double>(y) + 0.5 - cy;
        for (std::size_t x = 0; x < w; ++x) {
          const double dx = static_cast<double>(x) + 0.5 - cx;
          const double e = std::exp(-(dy * dy + dx * dx) * inv_two_var);
          const std::size_t i = y * w + x;
          scene.envelope(s, i) = std::max(scene.envelope(s, i), e);
          for (std::size_t c = 0; c < d; ++c) {
            scene.blob_part(s, i, c) += amp * e * signature[c];
          }
        }
      }
    }
    for (std::size_t i = 0; i < hw; ++i) {
      if (scene.envelope(s, i) >= mask_level) scene.blob_mask[s * hw + i] = 1;
      for (std::size_t c = 0; c < d; ++c) {
        scene.features(s, i, c) += scene.blob_part(s, i, c);
      }
    }
  }
  return scene;
}

FeatureBatch generate_synthetic_batch(const ScenarioConfig& config) {
  return std::move(make_scene(config).features);
}

}  // namespace enact
