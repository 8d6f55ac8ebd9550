#include "enact/encoder.hpp"

#include <cmath>

#include "enact/softmax.hpp"

namespace enact {

namespace {

FeatureBatch add_positions(const FeatureBatch& x, const DenseArray& positions) {
  FeatureBatch out = x;
  const std::size_t n = x.extent(0), hw = x.extent(1), d = x.extent(2);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 0; i < hw; ++i) {
      auto dst = out.row(s, i);
      auto pos = positions.row(i);
      for (std::size_t c = 0; c < d; ++c) dst[c] += pos[c];
    }
  return out;
}

void check_encoder_input(const FeatureBatch& x, const LinearHead& head, std::size_t heads) {
  check_feature_batch(x, "encoder_layer");
  check_arg(head.channels() == x.extent(2), "encoder_layer: head channels do not match input");
  check_arg(heads >= 1 && x.extent(2) % heads == 0,
            "encoder_layer: channels not divisible by head count");
}

}  // namespace

FeatureBatch encoder_layer_forward(const FeatureBatch& x, const LinearHead& info_head,
                                   double sigma, std::size_t heads, bool use_enact,
                                   EncoderDiagnostics* diagnostics) {
  check_encoder_input(x, info_head, heads);
  const FeatureBatch qk = add_positions(x, sinusoidal_positions(x.extent(1), x.extent(2)));

  AttentionOutput att;
  EncoderDiagnostics diag;
  diag.used_enact = use_enact;
  if (use_enact) {
    EnactResult clusters = enact_forward(qk, x, info_head, sigma);
    att = attention_clustered(qk, clusters.keys, clusters.values, heads);
    diag.cluster_counts = std::move(clusters.diagnostics.cluster_counts);
    diag.compression_ratio = clusters.diagnostics.compression_ratio;
  } else {
    att = attention_baseline(qk, qk, x, heads);
  }
  diag.weight_elements = att.weight_elements;
  if (diagnostics != nullptr) *diagnostics = std::move(diag);

  FeatureBatch out = std::move(att.values);
  for (std::size_t i = 0; i < out.size(); ++i) out.data[i] += x.data[i];
  return out;
}

FeatureBatch encoder_layer_forward_tape(const FeatureBatch& x, const LinearHead& info_head,
                                        double sigma, std::size_t heads,
                                        const RegionPartition* frozen, EncoderTape& tape) {
  check_encoder_input(x, info_head, heads);
  tape.heads = heads;
  tape.head = info_head;
  tape.kernel = build_kernel(sigma);
  tape.x = x;
  tape.positions = sinusoidal_positions(x.extent(1), x.extent(2));
  tape.qk = add_positions(x, tape.positions);
  tape.stages = run_pipeline(tape.qk, info_head, sigma, frozen);
  tape.k_cl = cluster_reduce(tape.qk, tape.stages.weights, tape.stages.partition);
  tape.v_cl = cluster_reduce(x, tape.stages.weights, tape.stages.partition);

  AttentionOutput att = attention_clustered(tape.qk, tape.k_cl, tape.v_cl, heads, &tape.attn);
  tape.output = std::move(att.values);
  for (std::size_t i = 0; i < tape.output.size(); ++i) tape.output.data[i] += x.data[i];
  return tape.output;
}

EncoderGrads encoder_layer_backward(const EncoderTape& tape, const DenseArray& upstream) {
  const std::size_t n = tape.x.extent(0), hw = tape.x.extent(1), d = tape.x.extent(2);
  check_arg(upstream.shape == tape.x.shape, "encoder_layer_backward: upstream shape mismatch");
  const std::size_t heads = tape.heads;
  const std::size_t dh = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  EncoderGrads grads;
  grads.input = upstream;  // residual path
  DenseArray d_qk({n, hw, d});
  DenseArray d_v({n, hw, d});

  // Attention backward: upstream -> query, clustered-key and clustered-value grads.
  DenseArray d_kcl({tape.k_cl.total(), d});
  DenseArray d_vcl({tape.v_cl.total(), d});
  std::vector<double> d_row, d_scores;
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t count = tape.k_cl.counts[s];
    const std::size_t off = tape.k_cl.offsets[s];
    d_row.resize(count);
    d_scores.resize(count);
    for (std::size_t h = 0; h < heads; ++h) {
      const std::size_t base = h * dh;
      const DenseArray& probs = tape.attn.probs[s * heads + h];
      for (std::size_t i = 0; i < hw; ++i) {
        auto up = upstream.row(s, i).subspan(base, dh);
        auto prow = probs.row(i);
        for (std::size_t r = 0; r < count; ++r) {
          auto vr = tape.v_cl.features.row(off + r).subspan(base, dh);
          auto d_vr = d_vcl.row(off + r).subspan(base, dh);
          const double a = prow[r];
          double dot = 0.0;
          for (std::size_t c = 0; c < dh; ++c) {
            d_vr[c] += a * up[c];
            dot += up[c] * vr[c];
          }
          d_row[r] = dot;
        }
        softmax_backward_into(prow, d_row, d_scores);
        auto qi = tape.qk.row(s, i).subspan(base, dh);
        auto d_qi = d_qk.row(s, i).subspan(base, dh);
        for (std::size_t r = 0; r < count; ++r) {
          auto kr = tape.k_cl.features.row(off + r).subspan(base, dh);
          auto d_kr = d_kcl.row(off + r).subspan(base, dh);
          const double dm = d_scores[r] * scale;
          for (std::size_t c = 0; c < dh; ++c) {
            d_qi[c] += dm * kr[c];
            d_kr[c] += dm * qi[c];
          }
        }
      }
    }
  }

  // Cluster reduction backward: keys and values share the region weights.
  const RegionPartition& partition = tape.stages.partition;
  const DenseArray& weights = tape.stages.weights;
  DenseArray d_weights({n, hw});
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t row = tape.k_cl.offsets[s];
    for (const Run& run : partition.samples[s]) {
      auto d_k_row = d_kcl.row(row);
      auto d_v_row = d_vcl.row(row);
      ++row;
      for (std::size_t i = run.begin; i < run.end; ++i) {
        auto key = tape.qk.row(s, i);
        auto val = tape.x.row(s, i);
        auto d_key = d_qk.row(s, i);
        auto d_val = d_v.row(s, i);
        const double w = weights(s, i);
        double dw = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          dw += d_k_row[c] * key[c] + d_v_row[c] * val[c];
          d_key[c] += w * d_k_row[c];
          d_val[c] += w * d_v_row[c];
        }
        d_weights(s, i) = dw;
      }
    }
  }

  // Region softmax backward, per run.
  DenseArray d_smoothed({n, hw});
  for (std::size_t s = 0; s < n; ++s) {
    for (const Run& run : partition.samples[s]) {
      const std::size_t len = run.end - run.begin;
      softmax_backward_into(weights.row(s).subspan(run.begin, len),
                            d_weights.row(s).subspan(run.begin, len),
                            d_smoothed.row(s).subspan(run.begin, len));
    }
  }

  // Smoothing adjoint, then -p ln p and the pdf head.
  DenseArray d_information({n, hw});
  if (hw == 1) {
    // Single-pixel samples pin the pdf; nothing flows back to the head.
    d_information = DenseArray({n, 1}, 0.0);
  } else {
    for (std::size_t s = 0; s < n; ++s)
      smooth_row_adjoint(d_smoothed.row(s), tape.kernel, d_information.row(s));
  }

  if (hw == 1) {
    grads.weights = DenseArray({d, 1});
    for (std::size_t i = 0; i < grads.input.size(); ++i)
      grads.input.data[i] += d_qk.data[i] + d_v.data[i];
    return grads;
  }

  const DenseArray d_pdf = information_grad_pdf(tape.stages.pdf, d_information);
  InformationGrads info_grads = pdf_chain_backward(tape.qk, tape.head, tape.stages.pdf, d_pdf);

  grads.weights = std::move(info_grads.grad_weights);
  grads.bias = info_grads.grad_bias;
  for (std::size_t i = 0; i < grads.input.size(); ++i)
    grads.input.data[i] += d_qk.data[i] + d_v.data[i] + info_grads.grad_keys.data[i];
  return grads;
}

}  // namespace enact
