#pragma once

#include "enact/linear_head.hpp"
#include "enact/tensor.hpp"

namespace enact {

enum class SignalKind { pdf, information, smoothed_information };

/// Per-pixel scalar signal over a batch. `values` is rank-2, batch x pixels.
/// kind == pdf:         each row sums to 1, entries in (0, 1)
/// kind == information: entries in (0, 1/e]
struct InfoSignal {
  DenseArray values;
  SignalKind kind = SignalKind::pdf;

  std::size_t batch() const { return values.extent(0); }
  std::size_t pixels() const { return values.extent(1); }
};

/// Learned pixel distribution: project each feature vector to a scalar logit,
/// then softmax across the pixels of each sample independently.
InfoSignal pixel_pdf(const FeatureBatch& keys, const LinearHead& head);

/// Elementwise -p ln p. Input must be a pdf with entries strictly inside (0, 1).
InfoSignal self_information(const InfoSignal& pdf);

struct InformationGrads {
  DenseArray grad_weights;  // channels x 1
  double grad_bias = 0.0;
  DenseArray grad_keys;  // batch x pixels x channels
};

/// d(information)/d(pdf) pull-back: upstream * -(ln p + 1), elementwise.
DenseArray information_grad_pdf(const InfoSignal& pdf, const DenseArray& upstream);

/// Pull a gradient on the pdf back through the per-sample softmax and the
/// linear head, producing gradients for weights, bias and keys.
InformationGrads pdf_chain_backward(const FeatureBatch& keys, const LinearHead& head,
                                    const InfoSignal& pdf, const DenseArray& d_pdf);

/// Full chain: upstream is a gradient on the self-information signal.
InformationGrads information_backward(const FeatureBatch& keys, const LinearHead& head,
                                      const DenseArray& upstream);

}  // namespace enact
