#pragma once

#include "enact/attention.hpp"
#include "enact/clustering.hpp"
#include "enact/linear_head.hpp"
#include "enact/tensor.hpp"

namespace enact {

struct EncoderDiagnostics {
  bool used_enact = false;
  std::vector<std::size_t> cluster_counts;
  double compression_ratio = 1.0;
  std::size_t weight_elements = 0;
};

/// Toy encoder layer: q = k = x + positions, v = x, attention, then a
/// residual add. With use_enact the keys and values are clustered first;
/// either way the output keeps the input shape.
FeatureBatch encoder_layer_forward(const FeatureBatch& x, const LinearHead& info_head,
                                   double sigma, std::size_t heads, bool use_enact,
                                   EncoderDiagnostics* diagnostics = nullptr);

/// Everything the backward pass needs from one clustered forward.
struct EncoderTape {
  std::size_t heads = 0;
  LinearHead head;
  GaussianKernel kernel;
  FeatureBatch x;
  DenseArray positions;  // pixels x channels
  FeatureBatch qk;       // x + positions
  PipelineStages stages;
  RaggedClusters k_cl;
  RaggedClusters v_cl;
  ClusteredAttentionTape attn;
  FeatureBatch output;
};

/// Clustered forward that records intermediates. Pass `frozen` to pin the
/// partition (the finite-difference path); otherwise it is recomputed from
/// the current head.
FeatureBatch encoder_layer_forward_tape(const FeatureBatch& x, const LinearHead& info_head,
                                        double sigma, std::size_t heads,
                                        const RegionPartition* frozen, EncoderTape& tape);

struct EncoderGrads {
  DenseArray weights;  // channels x 1
  double bias = 0.0;
  DenseArray input;    // batch x pixels x channels
};

/// Reverse-mode pass through attention, cluster reduction, region softmax,
/// smoothing, self-information and the pdf head. The partition recorded on
/// the tape is treated as a constant.
EncoderGrads encoder_layer_backward(const EncoderTape& tape, const DenseArray& upstream);

}  // namespace enact
