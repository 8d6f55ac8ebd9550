#include "enact/gradcheck.hpp"

#include <cmath>
#include <string>

#include "enact/tensor.hpp"

namespace enact {

std::vector<double> fd_gradient(const std::function<double(std::span<const double>)>& f,
                                std::span<const double> x, double eps) {
  check_arg(eps > 0.0, "fd_gradient: eps must be positive");
  std::vector<double> point(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double saved = point[i];
    point[i] = saved + eps;
    const double f_plus = f(point);
    point[i] = saved - eps;
    const double f_minus = f(point);
    point[i] = saved;
    check_state(std::isfinite(f_plus) && std::isfinite(f_minus),
                "fd_gradient: non-finite evaluation at coordinate " + std::to_string(i));
    grad[i] = (f_plus - f_minus) / (2.0 * eps);
  }
  return grad;
}

}  // namespace enact
