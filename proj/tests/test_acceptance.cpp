// Acceptance gate for the clustering library. Each criterion prints exactly
// one [PASS]/[FAIL] line; the process exits nonzero if any of them fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "enact/attention.hpp"
#include "enact/clustering.hpp"
#include "enact/encoder.hpp"
#include "enact/harness.hpp"
#include "enact/information.hpp"
#include "enact/rng.hpp"
#include "enact/segmentation.hpp"
#include "enact/smoothing.hpp"
#include "enact/synthetic.hpp"

using namespace enact;

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw std::runtime_error(message);
}

std::string fmt(const char* pattern, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, pattern, value);
  return buffer;
}

FeatureBatch random_batch(std::size_t n, std::size_t hw, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  FeatureBatch batch({n, hw, d});
  for (double& v : batch.data) v = rng.uniform(-1.0, 1.0);
  return batch;
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ScenarioConfig train_config() {
  ScenarioConfig config;
  config.n = 4;
  config.h = 16;
  config.w = 16;
  config.d = 16;
  config.heads = 4;
  config.sigma = 3.0;
  config.seed = 7;
  config.blobs = 3;
  return config;
}

// 1. Strict compression on the default scenario, and the cluster-count bound
//    holds over a fuzzed config sweep.
void criterion_compression_inequality() {
  const auto start = std::chrono::steady_clock::now();

  const CompressionReport report = run_compression_benchmark(ScenarioConfig{});
  const std::size_t budget = 4 * 1024;
  require(report.total_clusters < budget,
          "default scenario failed to compress: " + std::to_string(report.total_clusters));

  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0.0, 3.0));
    const std::size_t hw = 1 + static_cast<std::size_t>(rng.uniform(0.0, 64.0));
    const std::size_t d = 1 + static_cast<std::size_t>(rng.uniform(0.0, 6.0));
    const double sigma = rng.uniform(0.5, 4.0);
    const auto batch = random_batch(n, hw, d, 3000 + static_cast<std::uint64_t>(trial));
    const LinearHead head = LinearHead::init(static_cast<std::int64_t>(d),
                                             4000 + static_cast<std::uint64_t>(trial));
    const PipelineStages stages = run_pipeline(batch, head, sigma);
    require(stages.partition.total_clusters() <= n * hw,
            "fuzz trial " + std::to_string(trial) + " exceeded the pixel budget");
  }
  require(elapsed_seconds(start) < 60.0, "compression sweep exceeded one minute");
}

// 2. An all-singleton partition turns the clustered path into the baseline.
void criterion_singleton_equivalence() {
  Rng rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0.0, 2.0));
    const std::size_t hw = 1 + static_cast<std::size_t>(rng.uniform(0.0, 64.0));
    const std::size_t heads = (trial % 3 == 0) ? 1 : ((trial % 3 == 1) ? 2 : 4);
    const std::size_t d = 8;
    const auto x = random_batch(n, hw, d, 5000 + static_cast<std::uint64_t>(trial));
    const LinearHead head = LinearHead::init(static_cast<std::int64_t>(d),
                                             6000 + static_cast<std::uint64_t>(trial));

    const EnactResult r =
        enact_forward_with_partition(x, x, head, 1.0, singleton_partition(n, hw));
    const auto clustered = attention_clustered(x, r.keys, r.values, heads);
    const auto baseline = attention_baseline(x, x, x, heads);
    double max_abs = 0.0;
    for (std::size_t i = 0; i < baseline.values.size(); ++i) {
      max_abs = std::max(max_abs, std::abs(clustered.values.data[i] - baseline.values.data[i]));
    }
    require(max_abs <= 1e-10,
            "trial " + std::to_string(trial) + " max abs gap " + fmt("%.3e", max_abs));
  }
}

// 3. Constant features collapse each sample to one cluster, and the attention
//    rows reduce to that cluster's Value vector plus the residual.
void criterion_degenerate_collapse() {
  const std::size_t n = 2, hw = 12, d = 4, heads = 2;
  FeatureBatch x({n, hw, d});
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 0; i < hw; ++i)
      for (std::size_t c = 0; c < d; ++c)
        x(s, i, c) = 0.3 * static_cast<double>(s + 1) + 0.1 * static_cast<double>(c);
  const LinearHead head = LinearHead::init(d, 17);

  const EnactResult r = enact_forward(x, x, head, 2.0);
  for (std::size_t count : r.diagnostics.cluster_counts) {
    require(count == 1, "constant sample split into " + std::to_string(count) + " clusters");
  }

  const auto out = attention_clustered(x, r.keys, r.values, heads);
  for (std::size_t s = 0; s < n; ++s) {
    const auto v_cl = r.values.cluster(s, 0);
    for (std::size_t i = 0; i < hw; ++i) {
      for (std::size_t c = 0; c < d; ++c) {
        require(std::abs(out.values(s, i, c) - v_cl[c]) <= 1e-10,
                "attention row differs from the single Value vector");
        const double with_residual = x(s, i, c) + out.values(s, i, c);
        require(std::abs(with_residual - (x(s, i, c) + v_cl[c])) <= 1e-10,
                "residual row differs from input plus the single Value vector");
      }
    }
  }
}

// 4. The run partitioner agrees with a brute-force scan.
void criterion_partition_oracle() {
  Rng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    SignField signs;
    signs.batch = 1;
    signs.pixels = 1 + static_cast<std::size_t>(rng.uniform(0.0, 64.0));
    signs.values.resize(signs.pixels);
    for (auto& s : signs.values) s = rng.uniform(0.0, 1.0) < 0.5 ? -1 : +1;

    std::vector<Run> expected;
    for (std::size_t i = 0; i < signs.pixels; ++i) {
      if (expected.empty() || expected.back().sign != signs.values[i]) {
        expected.push_back({i, i + 1, signs.values[i]});
      } else {
        expected.back().end = i + 1;
      }
    }

    const RegionPartition partition = partition_runs(signs);
    const auto& actual = partition.samples.at(0);
    require(actual.size() == expected.size(),
            "trial " + std::to_string(trial) + " run count mismatch");
    for (std::size_t k = 0; k < expected.size(); ++k) {
      require(actual[k].begin == expected[k].begin && actual[k].end == expected[k].end &&
                  actual[k].sign == expected[k].sign,
              "trial " + std::to_string(trial) + " run " + std::to_string(k) + " mismatch");
    }
  }
}

// 5. Analytic gradients of the full chain match central differences.
void criterion_gradient_fidelity() {
  const auto start = std::chrono::steady_clock::now();
  ScenarioConfig config;
  config.n = 1;
  config.h = 4;
  config.w = 8;  // 32 pixels, the cap for the finite-difference sweep
  config.d = 4;
  config.heads = 2;
  config.sigma = 1.0;
  config.seed = 11;
  const GradCheckReport report = run_gradient_check(config);
  require(report.blocks.size() == 3, "expected three gradient blocks");
  for (const GradCheckBlock& block : report.blocks) {
    require(block.pass && block.max_rel_err <= kGradCheckTol,
            block.name + " max rel err " + fmt("%.3e", block.max_rel_err));
  }
  require(elapsed_seconds(start) < 120.0, "gradient check exceeded two minutes");
}

// 6. Smoothing kernel contracts: tap counts, normalization, constant fixed point.
void criterion_smoothing_contracts() {
  const GaussianKernel wide = build_kernel(5.0);
  const GaussianKernel mid = build_kernel(3.0);
  require(wide.taps.size() == 31, "sigma 5 kernel has " + std::to_string(wide.taps.size()));
  require(mid.taps.size() == 19, "sigma 3 kernel has " + std::to_string(mid.taps.size()));

  for (const GaussianKernel* kernel : {&wide, &mid}) {
    double sum = 0.0;
    for (double t : kernel->taps) sum += t;
    require(std::abs(sum - 1.0) <= 1e-12, "taps sum to " + fmt("%.17g", sum));
  }

  const InfoSignal constant{DenseArray({2, 40}, 0.31), SignalKind::information};
  const InfoSignal smoothed = gaussian_smooth(constant, wide);
  for (double v : smoothed.values.data) {
    require(std::abs(v - 0.31) <= 1e-12, "constant signal moved to " + fmt("%.17g", v));
  }
}

// 7. Weight-element reduction on the default scenario, with the seeded result
//    pinned as a regression constant.
void criterion_element_reduction() {
  const CompressionReport report = run_compression_benchmark(ScenarioConfig{});
  require(report.compression_ratio < 0.85,
          "ratio " + fmt("%.6f", report.compression_ratio) + " not below 0.85");
  require(report.compression_ratio == 0.080078125,
          "seeded ratio drifted to " + fmt("%.17g", report.compression_ratio));
  require(report.total_clusters == 328,
          "seeded cluster total drifted to " + std::to_string(report.total_clusters));
}

// 8. Toy training lowers the loss and the curve is bit-reproducible.
void criterion_training_descends() {
  const TrainResult a = run_toy_training(train_config(), 100);
  const TrainResult b = run_toy_training(train_config(), 100);
  require(a.losses == b.losses, "loss curves differ between identical runs");
  require(a.losses.back() < a.losses.front(),
          "loss rose: " + fmt("%.17g", a.losses.front()) + " to " +
              fmt("%.17g", a.losses.back()));
  require(a.losses.front() == 0.18855739193143481,
          "seeded initial loss drifted to " + fmt("%.17g", a.losses.front()));
  require(a.losses.back() == 0.1815216551759645,
          "seeded final loss drifted to " + fmt("%.17g", a.losses.back()));
}

// 9. After training, self-information concentrates on the planted bumps of a
//    held-out scene.
void criterion_information_concentrates() {
  const ScenarioConfig config = train_config();
  const TrainResult trained = run_toy_training(config, 100);

  ScenarioConfig holdout = config;
  holdout.seed = mix_seed(config.seed, kHoldoutSeedSalt);
  const SyntheticScene scene = make_scene(holdout);

  const InformationContrast after = information_contrast(scene, trained.head, 0);
  require(after.blob_mean > after.background_mean,
          "blob mean " + fmt("%.6e", after.blob_mean) + " not above background " +
              fmt("%.6e", after.background_mean));

  const LinearHead fresh = LinearHead::init(config.d, mix_seed(config.seed, kHeadSeedSalt));
  const InformationContrast before = information_contrast(scene, fresh, 0);
  require(after.blob_mean - after.background_mean >
              before.blob_mean - before.background_mean,
          "training did not widen the contrast");
}

struct Criterion {
  int id;
  const char* summary;
  std::function<void()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "cluster totals compress the default scenario and never exceed the pixel budget",
       criterion_compression_inequality},
      {2, "singleton partitions reproduce baseline attention within 1e-10",
       criterion_singleton_equivalence},
      {3, "constant features collapse to one cluster per sample",
       criterion_degenerate_collapse},
      {4, "run partitioning matches a brute-force scan on 1000 sign vectors",
       criterion_partition_oracle},
      {5, "analytic gradients match finite differences within 1e-4",
       criterion_gradient_fidelity},
      {6, "smoothing kernels are normalized with pinned tap counts",
       criterion_smoothing_contracts},
      {7, "attention weight elements shrink below 0.85 of baseline",
       criterion_element_reduction},
      {8, "toy training lowers the loss bit-reproducibly",
       criterion_training_descends},
      {9, "trained information is brightest on held-out planted bumps",
       criterion_information_concentrates},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    std::string detail;
    try {
      criterion.body();
    } catch (const std::exception& e) {
      detail = e.what();
      ++failures;
    }
    if (detail.empty()) {
      std::printf("[PASS] criterion %d: %s\n", criterion.id, criterion.summary);
    } else {
      std::printf("[FAIL] criterion %d: %s (%s)\n", criterion.id, criterion.summary,
                  detail.c_str());
    }
  }
  if (failures != 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
