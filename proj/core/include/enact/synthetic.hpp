#pragma once

#include <cstdint>
#include <vector>

#include "enact/scenario.hpp"
#include "enact/tensor.hpp"

namespace enact {

/// A generated batch plus the ground truth used to plant it.
///
/// `features` is what the pipeline sees: smooth bumps over low-amplitude
/// noise. `blob_part` is the bump contribution alone, `envelope` the peak
/// bump response per pixel, and `blob_mask` marks pixels whose envelope is
/// at least exp(-2) (inside roughly two spatial stds of some bump center).
struct SyntheticScene {
  FeatureBatch features;            // (n, h*w, d)
  DenseArray blob_part;             // (n, h*w, d)
  DenseArray envelope;              // (n, h*w)
  std::vector<std::uint8_t> blob_mask;  // n*h*w, row-major

  bool on_blob(std::size_t sample, std::size_t pixel) const;
};

SyntheticScene make_scene(const ScenarioConfig& config);

/// Features only, for callers that do not need the ground truth.
FeatureBatch generate_synthetic_batch(const ScenarioConfig& config);

}  // namespace enact
