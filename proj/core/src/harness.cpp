#include "enact/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "enact/attention.hpp"
#include "enact/clustering.hpp"
#include "enact/encoder.hpp"
#include "enact/gradcheck.hpp"
#include "enact/information.hpp"
#include "enact/rng.hpp"

namespace enact {
namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

double sum_all(const DenseArray& a) {
  double acc = 0.0;
  for (double v : a.data) acc += v;
  return acc;
}

}  // namespace

CompressionReport measure_compression(const FeatureBatch& batch, const LinearHead& head,
                                      const ScenarioConfig& config) {
  config.validate();
  check_feature_batch(batch, "measure_compression");
  check_arg(batch.extent(0) == static_cast<std::size_t>(config.n) &&
                batch.extent(1) == config.pixels() &&
                batch.extent(2) == static_cast<std::size_t>(config.d),
            "measure_compression: batch shape does not match the scenario");

  const std::size_t hw = config.pixels();
  const auto heads = static_cast<std::size_t>(config.heads);

  auto start = std::chrono::steady_clock::now();
  EnactResult clusters = enact_forward(batch, batch, head, config.sigma);
  const double pipeline_s = seconds_since(start);

  start = std::chrono::steady_clock::now();
  AttentionOutput clustered = attention_clustered(batch, clusters.keys, clusters.values, heads);
  const double clustered_s = seconds_since(start);

  start = std::chrono::steady_clock::now();
  AttentionOutput baseline = attention_baseline(batch, batch, batch, heads);
  const double baseline_s = seconds_since(start);

  check_state(baseline.values.shape == clustered.values.shape,
              "measure_compression: path outputs disagree on shape");

  CompressionReport report;
  report.config = config;
  report.cluster_counts = clusters.diagnostics.cluster_counts;
  report.total_clusters = clusters.diagnostics.total_clusters;
  report.baseline_weight_elements = baseline.weight_elements;
  report.ragged_weight_elements = clustered.weight_elements;
  report.compression_ratio = clusters.diagnostics.compression_ratio;
  report.baseline_peak_elements = hw * hw;
  const std::size_t peak =
      *std::max_element(report.cluster_counts.begin(), report.cluster_counts.end());
  report.clustered_peak_elements = hw * peak;
  report.baseline_seconds = baseline_s;
  report.clustered_seconds = clustered_s;
  report.pipeline_seconds = pipeline_s;
  report.validate();
  return report;
}

CompressionReport run_compression_benchmark(const ScenarioConfig& config) {
  config.validate();
  const FeatureBatch batch = generate_synthetic_batch(config);
  const LinearHead head = LinearHead::init(config.d, mix_seed(config.seed, kHeadSeedSalt));
  return measure_compression(batch, head, config);
}

GradCheckBlock compare_gradients(std::string name, std::span<const double> analytic,
                                 std::span<const double> fd) {
  check_arg(analytic.size() == fd.size(), "compare_gradients: size mismatch");
  check_arg(!analytic.empty(), "compare_gradients: empty gradient");
  GradCheckBlock block;
  block.name = std::move(name);
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    const double abs_err = std::fabs(analytic[i] - fd[i]);
    const double scale =
        std::max({std::fabs(analytic[i]), std::fabs(fd[i]), kGradCheckFloor});
    block.max_abs_err = std::max(block.max_abs_err, abs_err);
    block.max_rel_err = std::max(block.max_rel_err, abs_err / scale);
  }
  block.pass = block.max_rel_err <= kGradCheckTol;
  return block;
}

GradCheckReport run_gradient_check(const ScenarioConfig& config) {
  config.validate();
  if (config.pixels() > 32) {
    throw std::invalid_argument(
        "run_gradient_check: scenarios are capped at 32 pixels; finite differences grow "
        "quadratically with size");
  }
  const auto n = static_cast<std::size_t>(config.n);
  const auto d = static_cast<std::size_t>(config.d);
  const std::size_t hw = config.pixels();
  const auto heads = static_cast<std::size_t>(config.heads);

  const FeatureBatch x = generate_synthetic_batch(config);
  const LinearHead head = LinearHead::init(config.d, mix_seed(config.seed, kHeadSeedSalt));

  EncoderTape tape;
  encoder_layer_forward_tape(x, head, config.sigma, heads, nullptr, tape);
  DenseArray ones({n, hw, d}, 1.0);
  const EncoderGrads grads = encoder_layer_backward(tape, ones);
  const RegionPartition frozen = tape.stages.partition;

  const auto loss_with_head = [&](const LinearHead& h) {
    EncoderTape t;
    return sum_all(encoder_layer_forward_tape(x, h, config.sigma, heads, &frozen, t));
  };

  const auto fd_weights = fd_gradient(
      [&](std::span<const double> wv) {
        LinearHead h{DenseArray::from({d, 1}, std::vector<double>(wv.begin(), wv.end())),
                     head.bias};
        return loss_with_head(h);
      },
      head.weights.data, kGradCheckEps);

  const auto fd_bias = fd_gradient(
      [&](std::span<const double> bv) {
        LinearHead h{head.weights, bv[0]};
        return loss_with_head(h);
      },
      std::span<const double>(&head.bias, 1), kGradCheckEps);

  const auto fd_input = fd_gradient(
      [&](std::span<const double> xv) {
        FeatureBatch xb = DenseArray::from({n, hw, d}, std::vector<double>(xv.begin(), xv.end()));
        EncoderTape t;
        return sum_all(encoder_layer_forward_tape(xb, head, config.sigma, heads, &frozen, t));
      },
      x.data, kGradCheckEps);

  GradCheckReport report;
  report.blocks.push_back(compare_gradients("head_weights", grads.weights.data, fd_weights));
  report.blocks.push_back(
      compare_gradients("head_bias", std::span<const double>(&grads.bias, 1), fd_bias));
  report.blocks.push_back(compare_gradients("input_features", grads.input.data, fd_input));
  report.pass = true;
  for (const auto& b : report.blocks) report.pass = report.pass && b.pass;
  return report;
}

TrainResult run_toy_training(const ScenarioConfig& config, std::int64_t steps,
                             double learning_rate) {
  config.validate();
  if (steps < 1) throw std::invalid_argument("run_toy_training: steps must be >= 1");
  if (!std::isfinite(learning_rate) || learning_rate < 0.0) {
    throw std::invalid_argument("run_toy_training: learning rate must be finite and >= 0");
  }
  const SyntheticScene scene = make_scene(config);
  const FeatureBatch& x = scene.features;
  DenseArray target = x;
  for (std::size_t i = 0; i < target.size(); ++i) {
    target.data[i] += kTargetGain * scene.blob_part.data[i];
  }
  const double inv_size = 1.0 / static_cast<double>(x.size());
  const auto heads = static_cast<std::size_t>(config.heads);

  TrainResult result;
  result.head = LinearHead::init(config.d, mix_seed(config.seed, kHeadSeedSalt));
  result.losses.reserve(static_cast<std::size_t>(steps));

  for (std::int64_t step = 0; step < steps; ++step) {
    try {
      EncoderTape tape;
      const FeatureBatch y =
          encoder_layer_forward_tape(x, result.head, config.sigma, heads, nullptr, tape);
      DenseArray diff = y;
      double loss = 0.0;
      for (std::size_t i = 0; i < diff.size(); ++i) {
        diff.data[i] -= target.data[i];
        loss += diff.data[i] * diff.data[i];
      }
      loss *= 0.5 * inv_size;
      if (!std::isfinite(loss)) {
        throw std::runtime_error("loss went non-finite");
      }
      result.losses.push_back(loss);

      for (double& g : diff.data) g *= inv_size;
      const EncoderGrads grads = encoder_layer_backward(tape, diff);
      for (std::size_t c = 0; c < result.head.weights.size(); ++c) {
        result.head.weights.data[c] -= learning_rate * grads.weights.data[c];
      }
      result.head.bias -= learning_rate * grads.bias;
    } catch (const std::exception& e) {
      throw std::runtime_error("run_toy_training: diverged at step " + std::to_string(step) +
                               ": " + e.what());
    }
  }
  return result;
}

void write_loss_csv(const std::vector<double>& losses, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_loss_csv: cannot open " + path.string());
  out << "step,loss\n";
  char buf[64];
  for (std::size_t i = 0; i < losses.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", losses[i]);
    out << i << ',' << buf << '\n';
  }
}

InformationContrast information_contrast(const SyntheticScene& scene, const LinearHead& head,
                                         std::size_t sample) {
  check_feature_batch(scene.features, "information_contrast");
  check_arg(sample < scene.features.extent(0), "information_contrast: sample out of range");
  const std::size_t hw = scene.features.extent(1);
  const std::size_t d = scene.features.extent(2);

  const DenseArray positions = sinusoidal_positions(hw, d);
  FeatureBatch keys({1, hw, d});
  for (std::size_t i = 0; i < hw; ++i) {
    for (std::size_t c = 0; c < d; ++c) {
      keys(0, i, c) = scene.features(sample, i, c) + positions(i, c);
    }
  }
  const InfoSignal info = self_information(pixel_pdf(keys, head));

  double blob_sum = 0.0, back_sum = 0.0;
  std::size_t blob_n = 0, back_n = 0;
  for (std::size_t i = 0; i < hw; ++i) {
    if (scene.on_blob(sample, i)) {
      blob_sum += info.values(0, i);
      ++blob_n;
    } else {
      back_sum += info.values(0, i);
      ++back_n;
    }
  }
  check_state(blob_n > 0 && back_n > 0,
              "information_contrast: sample needs both bump and background pixels");
  return {blob_sum / static_cast<double>(blob_n), back_sum / static_cast<double>(back_n)};
}

}  // namespace enact
