#include "enact/attention.hpp"

#include <cmath>
#include <string>

#include "enact/softmax.hpp"

namespace enact {

namespace {

void check_heads(std::size_t d, std::size_t heads, const std::string& who) {
  check_arg(heads >= 1, who + ": head count must be positive");
  check_arg(d % heads == 0, who + ": channels " + std::to_string(d) +
                                " not divisible by " + std::to_string(heads) + " heads");
}

}  // namespace

DenseArray sinusoidal_positions(std::size_t hw, std::size_t d) {
  check_arg(hw >= 1, "sinusoidal_positions: pixel count must be positive");
  check_arg(d >= 2 && d % 2 == 0, "sinusoidal_positions: channel count must be even");
  DenseArray table({hw, d});
  for (std::size_t pos = 0; pos < hw; ++pos) {
    for (std::size_t pair = 0; pair < d / 2; ++pair) {
      const double rate =
          std::pow(10000.0, 2.0 * static_cast<double>(pair) / static_cast<double>(d));
      const double angle = static_cast<double>(pos) / rate;
      table(pos, 2 * pair) = std::sin(angle);
      table(pos, 2 * pair + 1) = std::cos(angle);
    }
  }
  return table;
}

AttentionOutput attention_baseline(const FeatureBatch& q, const FeatureBatch& k,
                                   const FeatureBatch& v, std::size_t heads) {
  check_feature_batch(q, "attention_baseline");
  check_arg(k.shape == q.shape && v.shape == q.shape,
            "attention_baseline: q, k, v must share one shape");
  const std::size_t n = q.extent(0), hw = q.extent(1), d = q.extent(2);
  check_heads(d, heads, "attention_baseline");
  const std::size_t dh = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  AttentionOutput out;
  out.values = DenseArray({n, hw, d});
  out.weight_elements = n * heads * hw * hw;

  std::vector<double> scores(hw);  // one query row at a time
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t h = 0; h < heads; ++h) {
      const std::size_t base = h * dh;
      for (std::size_t i = 0; i < hw; ++i) {
        auto qi = q.row(s, i).subspan(base, dh);
        for (std::size_t j = 0; j < hw; ++j) {
          auto kj = k.row(s, j).subspan(base, dh);
          double dot = 0.0;
          for (std::size_t c = 0; c < dh; ++c) dot += qi[c] * kj[c];
          scores[j] = dot * scale;
        }
        stable_softmax_inplace(scores);
        auto oi = out.values.row(s, i).subspan(base, dh);
        for (std::size_t j = 0; j < hw; ++j) {
          auto vj = v.row(s, j).subspan(base, dh);
          const double a = scores[j];
          for (std::size_t c = 0; c < dh; ++c) oi[c] += a * vj[c];
        }
      }
    }
  }
  return out;
}

AttentionOutput attention_clustered(const FeatureBatch& q, const RaggedClusters& k_cl,
                                    const RaggedClusters& v_cl, std::size_t heads,
                                    ClusteredAttentionTape* tape) {
  check_feature_batch(q, "attention_clustered");
  k_cl.validate();
  v_cl.validate();
  const std::size_t n = q.extent(0), hw = q.extent(1), d = q.extent(2);
  check_arg(k_cl.batch() == n && v_cl.batch() == n,
            "attention_clustered: cluster batch does not match queries");
  check_arg(k_cl.channels() == d && v_cl.channels() == d,
            "attention_clustered: cluster channels do not match queries");
  check_arg(k_cl.counts == v_cl.counts,
            "attention_clustered: key and value cluster counts differ");
  check_heads(d, heads, "attention_clustered");
  const std::size_t dh = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  AttentionOutput out;
  out.values = DenseArray({n, hw, d});
  out.weight_elements = 0;
  if (tape != nullptr) tape->probs.assign(n * heads, DenseArray{});

  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t count = k_cl.counts[s];
    out.weight_elements += heads * hw * count;
    for (std::size_t h = 0; h < heads; ++h) {
      const std::size_t base = h * dh;
      DenseArray probs({hw, count});
      for (std::size_t i = 0; i < hw; ++i) {
        auto qi = q.row(s, i).subspan(base, dh);
        auto row = probs.row(i);
        for (std::size_t r = 0; r < count; ++r) {
          auto kr = k_cl.cluster(s, r).subspan(base, dh);
          double dot = 0.0;
          for (std::size_t c = 0; c < dh; ++c) dot += qi[c] * kr[c];
          row[r] = dot * scale;
        }
        stable_softmax_inplace(row);
        auto oi = out.values.row(s, i).subspan(base, dh);
        for (std::size_t r = 0; r < count; ++r) {
          auto vr = v_cl.cluster(s, r).subspan(base, dh);
          const double a = row[r];
          for (std::size_t c = 0; c < dh; ++c) oi[c] += a * vr[c];
        }
      }
      if (tape != nullptr) tape->probs[s * heads + h] = std::move(probs);
    }
  }
  return out;
}

}  // namespace enact
