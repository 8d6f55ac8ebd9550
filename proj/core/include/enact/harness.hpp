#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "enact/linear_head.hpp"
#include "enact/report.hpp"
#include "enact/scenario.hpp"
#include "enact/synthetic.hpp"
#include "enact/tensor.hpp"

namespace enact {

// Salts for deriving independent seed streams from one scenario seed.
inline constexpr std::uint64_t kHeadSeedSalt = 0x68656164;     // head init
inline constexpr std::uint64_t kHoldoutSeedSalt = 0x686f6c64;  // held-out scenes

/// Clusters `batch` with `head`, runs both attention paths on the raw batch
/// (q = k = v = batch, no position table) and tallies weight elements, peak
/// transient sizes and wall-clock times.
CompressionReport measure_compression(const FeatureBatch& batch, const LinearHead& head,
                                      const ScenarioConfig& config);

/// measure_compression over a generated scenario batch and a fresh head.
CompressionReport run_compression_benchmark(const ScenarioConfig& config);

inline constexpr double kGradCheckEps = 1e-6;
inline constexpr double kGradCheckTol = 1e-4;
inline constexpr double kGradCheckFloor = 1e-3;

struct GradCheckBlock {
  std::string name;
  double max_rel_err = 0.0;
  double max_abs_err = 0.0;
  bool pass = false;
};

struct GradCheckReport {
  std::vector<GradCheckBlock> blocks;
  bool pass = false;
};

/// Coordinate-wise comparison of an analytic gradient against a finite
/// difference. Relative error uses max(|analytic|, |fd|, kGradCheckFloor) in
/// the denominator so exactly-zero coordinates compare cleanly; a block
/// passes when the worst coordinate stays within kGradCheckTol.
GradCheckBlock compare_gradients(std::string name, std::span<const double> analytic,
                                 std::span<const double> fd);

/// Analytic gradients of the summed clustered-encoder output, checked against
/// central differences with the partition frozen at the evaluation point.
/// Blocks: head weights, head bias, input features. Scenarios are capped at
/// 32 pixels; the finite-difference sweep is quadratic in problem size.
GradCheckReport run_gradient_check(const ScenarioConfig& config);

// The gradient reaching the head is damped by three stacked softmax layers
// (pixel pdf, region weights, attention), hence the large step size. The
// target amplification keeps the planted bumps' reconstruction error
// dominant over the background term; at gain 1 the cheapest descent
// direction is diluting bump clusters, which inverts the learned signal.
inline constexpr double kToyLearningRate = 1e5;
inline constexpr double kTargetGain = 4.0;

struct TrainResult {
  std::vector<double> losses;  // one entry per step, measured before the update
  LinearHead head;
};

/// Plain SGD on the information head only. The regression target amplifies
/// the planted bumps, so lowering the loss pushes the head toward feature
/// directions the bumps occupy. The partition is recomputed every step and
/// held constant within the step's backward pass. Throws std::runtime_error
/// naming the step if the loss ever goes non-finite.
TrainResult run_toy_training(const ScenarioConfig& config, std::int64_t steps,
                             double learning_rate = kToyLearningRate);

void write_loss_csv(const std::vector<double>& losses, const std::filesystem::path& path);

struct InformationContrast {
  double blob_mean = 0.0;
  double background_mean = 0.0;
};

/// Mean self-information over planted-bump pixels versus background pixels
/// for one sample, with keys formed the way the encoder forms them
/// (features + position table).
InformationContrast information_contrast(const SyntheticScene& scene, const LinearHead& head,
                                         std::size_t sample);

}  // namespace enact
