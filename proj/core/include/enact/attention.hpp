#pragma once

#include <vector>

#include "enact/clustering.hpp"
#include "enact/tensor.hpp"

namespace enact {

struct AttentionOutput {
  FeatureBatch values;               // batch x pixels x channels
  std::size_t weight_elements = 0;   // attention-weight entries the path materializes
};

/// Standard interleaved sine/cosine position table, pixels x channels. Added
/// to queries and keys, never to values.
DenseArray sinusoidal_positions(std::size_t hw, std::size_t d);

/// Multi-head self-attention against the full key/value set. Scores are
/// scaled by 1/sqrt(d_head). Weight elements: batch * heads * pixels^2.
AttentionOutput attention_baseline(const FeatureBatch& q, const FeatureBatch& k,
                                   const FeatureBatch& v, std::size_t heads);

/// Per-(sample, head) attention probability rows, kept for the backward pass.
struct ClusteredAttentionTape {
  std::vector<DenseArray> probs;  // batch*heads entries, each pixels x counts[n]
};

/// Multi-head attention against each sample's own clusters only; queries never
/// see another sample's clusters. Weight elements: sum over samples of
/// heads * pixels * counts[n].
AttentionOutput attention_clustered(const FeatureBatch& q, const RaggedClusters& k_cl,
                                    const RaggedClusters& v_cl, std::size_t heads,
                                    ClusteredAttentionTape* tape = nullptr);

}  // namespace enact
