#include "enact/clustering.hpp"

#include <cmath>
#include <string>

#include "enact/softmax.hpp"

namespace enact {

void RaggedClusters::validate() const {
  check_arg(features.rank() == 2, "RaggedClusters: features must be rank 2");
  check_arg(offsets.size() == counts.size(), "RaggedClusters: offsets/counts length mismatch");
  std::size_t cursor = 0;
  for (std::size_t n = 0; n < counts.size(); ++n) {
    check_arg(counts[n] >= 1, "RaggedClusters: sample " + std::to_string(n) + " has no clusters");
    check_arg(offsets[n] == cursor, "RaggedClusters: offsets are not the running cluster sum");
    cursor += counts[n];
  }
  check_arg(cursor == features.extent(0), "RaggedClusters: counts do not sum to feature rows");
}

DenseArray region_softmax(const InfoSignal& smoothed, const RegionPartition& partition) {
  check_arg(smoothed.values.rank() == 2, "region_softmax: signal must be batch x pixels");
  check_arg(partition.batch() == smoothed.batch(),
            "region_softmax: partition batch does not match signal");
  check_arg(partition.pixels == smoothed.pixels(),
            "region_softmax: partition length does not match signal");
  partition.validate();

  DenseArray weights({smoothed.batch(), smoothed.pixels()});
  for (std::size_t n = 0; n < partition.batch(); ++n) {
    auto src = smoothed.values.row(n);
    auto dst = weights.row(n);
    for (const Run& run : partition.samples[n]) {
      std::span<double> slice = dst.subspan(run.begin, run.end - run.begin);
      for (std::size_t i = 0; i < slice.size(); ++i) slice[i] = src[run.begin + i];
      stable_softmax_inplace(slice);
    }
  }
  return weights;
}

RaggedClusters cluster_reduce(const FeatureBatch& batch, const DenseArray& weights,
                              const RegionPartition& partition) {
  check_feature_batch(batch, "cluster_reduce");
  check_arg(weights.rank() == 2 && weights.extent(0) == batch.extent(0) &&
                weights.extent(1) == batch.extent(1),
            "cluster_reduce: weights must be batch x pixels");
  check_arg(partition.batch() == batch.extent(0) && partition.pixels == batch.extent(1),
            "cluster_reduce: partition does not match batch");

  const std::size_t d = batch.extent(2);
  RaggedClusters clusters;
  clusters.counts = partition.cluster_counts();
  clusters.offsets.resize(clusters.counts.size());
  std::size_t total = 0;
  for (std::size_t n = 0; n < clusters.counts.size(); ++n) {
    clusters.offsets[n] = total;
    total += clusters.counts[n];
  }
  clusters.features = DenseArray({total, d});

  for (std::size_t n = 0; n < partition.batch(); ++n) {
    std::size_t row = clusters.offsets[n];
    for (const Run& run : partition.samples[n]) {
      auto dst = clusters.features.row(row++);
      for (std::size_t i = run.begin; i < run.end; ++i) {
        const double w = weights(n, i);
        auto src = batch.row(n, i);
        for (std::size_t c = 0; c < d; ++c) dst[c] += w * src[c];
      }
    }
  }
  return clusters;
}

PipelineStages run_pipeline(const FeatureBatch& keys, const LinearHead& head, double sigma,
                            const RegionPartition* frozen) {
  check_feature_batch(keys, "run_pipeline");
  check_arg(sigma > 0.0, "run_pipeline: sigma must be positive");
  const std::size_t n = keys.extent(0), hw = keys.extent(1);

  PipelineStages stages;
  if (hw == 1) {
    // Softmax over one pixel pins p = 1; the information signal is its limit, 0.
    stages.pdf = {DenseArray({n, 1}, 1.0), SignalKind::pdf};
    stages.information = {DenseArray({n, 1}, 0.0), SignalKind::information};
    stages.smoothed = {DenseArray({n, 1}, 0.0), SignalKind::smoothed_information};
    stages.partition = frozen ? *frozen : single_run_partition(n, 1);
    stages.weights = DenseArray({n, 1}, 1.0);
    return stages;
  }

  stages.pdf = pixel_pdf(keys, head);
  stages.information = self_information(stages.pdf);
  stages.smoothed = gaussian_smooth(stages.information, build_kernel(sigma));
  if (frozen != nullptr) {
    check_arg(frozen->batch() == n && frozen->pixels == hw,
              "run_pipeline: frozen partition does not match batch");
    stages.partition = *frozen;
  } else if (hw < 3) {
    stages.partition = single_run_partition(n, hw);
  } else {
    stages.d2 = second_derivative(stages.smoothed.values);
    stages.signs = sign_step(stages.d2);
    stages.partition = partition_runs(stages.signs);
  }
  stages.weights = region_softmax(stages.smoothed, stages.partition);
  return stages;
}

namespace {

EnactResult reduce_with_stages(PipelineStages&& stages, const FeatureBatch& keys,
                               const FeatureBatch& values) {
  check_arg(values.rank() == 3 && values.extent(0) == keys.extent(0) &&
                values.extent(1) == keys.extent(1),
            "enact_forward: values must match keys in batch and pixel extents");
  EnactResult result;
  result.keys = cluster_reduce(keys, stages.weights, stages.partition);
  result.values = cluster_reduce(values, stages.weights, stages.partition);
  result.diagnostics.cluster_counts = stages.partition.cluster_counts();
  result.diagnostics.total_clusters = stages.partition.total_clusters();
  result.diagnostics.compression_ratio =
      static_cast<double>(result.diagnostics.total_clusters) /
      static_cast<double>(keys.extent(0) * keys.extent(1));
  result.partition = std::move(stages.partition);
  return result;
}

}  // namespace

EnactResult enact_forward(const FeatureBatch& keys, const FeatureBatch& values,
                          const LinearHead& head, double sigma) {
  return reduce_with_stages(run_pipeline(keys, head, sigma), keys, values);
}

EnactResult enact_forward_with_partition(const FeatureBatch& keys, const FeatureBatch& values,
                                         const LinearHead& head, double sigma,
                                         const RegionPartition& partition) {
  return reduce_with_stages(run_pipeline(keys, head, sigma, &partition), keys, values);
}

}  // namespace enact
