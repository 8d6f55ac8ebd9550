#pragma once

#include <functional>
#include <span>
#include <vector>

namespace enact {

/// Central-difference gradient estimate, (f(x + eps e_i) - f(x - eps e_i)) / (2 eps)
/// per coordinate. Throws if any evaluation comes back non-finite, naming the
/// coordinate that triggered it.
std::vector<double> fd_gradient(const std::function<double(std::span<const double>)>& f,
                                std::span<const double> x, double eps);

}  // namespace enact
