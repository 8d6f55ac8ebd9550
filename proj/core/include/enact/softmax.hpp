#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace enact {

/// Max-shifted softmax. Output sums to 1 and is invariant under adding a
/// constant to every input.
std::vector<double> stable_softmax(std::span<const double> values);

/// Masked variant: entries with mask == 0 get probability exactly 0.
/// Throws if no entry is unmasked.
std::vector<double> stable_softmax(std::span<const double> values,
                                   std::span<const std::uint8_t> mask);

/// In-place softmax over a contiguous row; the workhorse for attention rows.
void stable_softmax_inplace(std::span<double> values);

/// Pull an upstream gradient back through a softmax that produced `probs`:
/// out[i] = probs[i] * (upstream[i] - sum_j upstream[j] * probs[j]).
std::vector<double> softmax_backward(std::span<const double> probs,
                                     std::span<const double> upstream);

void softmax_backward_into(std::span<const double> probs, std::span<const double> upstream,
                           std::span<double> out);

}  // namespace enact
