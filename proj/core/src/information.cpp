#include "enact/information.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "enact/softmax.hpp"

namespace enact {

namespace {

void check_head_matches(const FeatureBatch& keys, const LinearHead& head, const std::string& who) {
  check_feature_batch(keys, who);
  check_arg(head.channels() == keys.extent(2),
            who + ": head expects " + std::to_string(head.channels()) +
                " channels, batch has " + std::to_string(keys.extent(2)));
}

DenseArray pixel_logits(const FeatureBatch& keys, const LinearHead& head) {
  const std::size_t n = keys.extent(0), hw = keys.extent(1);
  DenseArray logits({n, hw});
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 0; i < hw; ++i) logits(s, i) = head.apply(keys.row(s, i));
  return logits;
}

}  // namespace

InfoSignal pixel_pdf(const FeatureBatch& keys, const LinearHead& head) {
  check_head_matches(keys, head, "pixel_pdf");
  DenseArray p = pixel_logits(keys, head);
  for (std::size_t s = 0; s < p.extent(0); ++s) stable_softmax_inplace(p.row(s));
  return {std::move(p), SignalKind::pdf};
}

InfoSignal self_information(const InfoSignal& pdf) {
  check_arg(pdf.kind == SignalKind::pdf, "self_information: input signal is not a pdf");
  DenseArray info({pdf.batch(), pdf.pixels()});
  for (std::size_t i = 0; i < info.size(); ++i) {
    const double p = pdf.values.data[i];
    if (!(p > 0.0 && p < 1.0))
      throw std::domain_error("self_information: pdf entry " + std::to_string(p) +
                              " outside (0, 1)");
    info.data[i] = -p * std::log(p);
  }
  return {std::move(info), SignalKind::information};
}

DenseArray information_grad_pdf(const InfoSignal& pdf, const DenseArray& upstream) {
  check_arg(pdf.kind == SignalKind::pdf, "information_grad_pdf: input signal is not a pdf");
  check_arg(upstream.shape == pdf.values.shape, "information_grad_pdf: upstream shape mismatch");
  DenseArray d_pdf({pdf.batch(), pdf.pixels()});
  for (std::size_t i = 0; i < d_pdf.size(); ++i) {
    const double p = pdf.values.data[i];
    d_pdf.data[i] = -upstream.data[i] * (std::log(p) + 1.0);
  }
  return d_pdf;
}

InformationGrads pdf_chain_backward(const FeatureBatch& keys, const LinearHead& head,
                                    const InfoSignal& pdf, const DenseArray& d_pdf) {
  check_head_matches(keys, head, "pdf_chain_backward");
  check_arg(d_pdf.shape == pdf.values.shape, "pdf_chain_backward: gradient shape mismatch");
  check_arg(pdf.batch() == keys.extent(0) && pdf.pixels() == keys.extent(1),
            "pdf_chain_backward: pdf shape does not match keys");

  const std::size_t n = keys.extent(0), hw = keys.extent(1), d = keys.extent(2);
  InformationGrads grads;
  grads.grad_weights = DenseArray({d, 1});
  grads.grad_keys = DenseArray({n, hw, d});

  DenseArray d_logits({n, hw});
  for (std::size_t s = 0; s < n; ++s)
    softmax_backward_into(pdf.values.row(s), d_pdf.row(s), d_logits.row(s));

  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < hw; ++i) {
      const double dz = d_logits(s, i);
      grads.grad_bias += dz;
      auto key = keys.row(s, i);
      auto d_key = grads.grad_keys.row(s, i);
      for (std::size_t c = 0; c < d; ++c) {
        grads.grad_weights.data[c] += dz * key[c];
        d_key[c] = dz * head.weights.data[c];
      }
    }
  }
  return grads;
}

InformationGrads information_backward(const FeatureBatch& keys, const LinearHead& head,
                                      const DenseArray& upstream) {
  check_head_matches(keys, head, "information_backward");
  check_arg(upstream.rank() == 2 && upstream.extent(0) == keys.extent(0) &&
                upstream.extent(1) == keys.extent(1),
            "information_backward: upstream must be batch x pixels");
  const InfoSignal pdf = pixel_pdf(keys, head);
  const DenseArray d_pdf = information_grad_pdf(pdf, upstream);
  return pdf_chain_backward(keys, head, pdf, d_pdf);
}

}  // namespace enact
