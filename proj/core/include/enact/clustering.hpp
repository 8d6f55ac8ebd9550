#pragma once

#include <vector>

#include "enact/information.hpp"
#include "enact/linear_head.hpp"
#include "enact/segmentation.hpp"
#include "enact/smoothing.hpp"
#include "enact/tensor.hpp"

namespace enact {

/// Variable-length cluster features, concatenated over samples.
/// features is total_clusters x channels; offsets[n] is where sample n's
/// clusters start; counts[n] is how many it has.
struct RaggedClusters {
  DenseArray features;
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> counts;

  std::size_t batch() const { return counts.size(); }
  std::size_t channels() const { return features.extent(1); }
  std::size_t total() const { return features.extent(0); }
  std::span<const double> cluster(std::size_t n, std::size_t r) const {
    return features.row(offsets[n] + r);
  }
  void validate() const;
};

/// Softmax of the smoothed signal restricted to each run; every run's weights
/// sum to 1. Output is batch x pixels.
DenseArray region_softmax(const InfoSignal& smoothed, const RegionPartition& partition);

/// Weighted per-run reduction: cluster vector = sum over the run's pixels of
/// weight * feature vector.
RaggedClusters cluster_reduce(const FeatureBatch& batch, const DenseArray& weights,
                              const RegionPartition& partition);

/// Every intermediate of the clustering pipeline, in stage order.
struct PipelineStages {
  InfoSignal pdf;
  InfoSignal information;
  InfoSignal smoothed;
  DenseArray d2;      // empty on the short-signal fallback path
  SignField signs;    // ditto
  RegionPartition partition;
  DenseArray weights;
};

/// pdf -> information -> smoothing -> curvature segmentation -> region softmax.
/// Samples shorter than 3 pixels fall back to a single run. When `frozen` is
/// given, the partition is taken as-is and the curvature stages are skipped;
/// gradients never flow through partition selection either way.
PipelineStages run_pipeline(const FeatureBatch& keys, const LinearHead& head, double sigma,
                            const RegionPartition* frozen = nullptr);

struct EnactDiagnostics {
  std::vector<std::size_t> cluster_counts;
  std::size_t total_clusters = 0;
  double compression_ratio = 1.0;  // total clusters / (batch * pixels)
};

struct EnactResult {
  RaggedClusters keys;
  RaggedClusters values;
  RegionPartition partition;
  EnactDiagnostics diagnostics;
};

/// Full clustering pass: segment the keys' information signal, then reduce
/// keys and values with the same region weights.
EnactResult enact_forward(const FeatureBatch& keys, const FeatureBatch& values,
                          const LinearHead& head, double sigma);

/// Same reduction against an externally fixed partition.
EnactResult enact_forward_with_partition(const FeatureBatch& keys, const FeatureBatch& values,
                                         const LinearHead& head, double sigma,
                                         const RegionPartition& partition);

}  // namespace enact
