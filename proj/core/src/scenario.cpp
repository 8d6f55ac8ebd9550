#include "enact/scenario.hpp"

#include <cstdio>
#include <stdexcept>

namespace enact {

void ScenarioConfig::validate() const {
  if (n < 1) throw std::invalid_argument("ScenarioConfig: n must be >= 1");
  if (h < 1) throw std::invalid_argument("ScenarioConfig: h must be >= 1");
  if (w < 1) throw std::invalid_argument("ScenarioConfig: w must be >= 1");
  if (d < 1) throw std::invalid_argument("ScenarioConfig: d must be >= 1");
  if (heads < 1) throw std::invalid_argument("ScenarioConfig: heads must be >= 1");
  if (d % heads != 0) throw std::invalid_argument("ScenarioConfig: heads must divide d");
  if (!(sigma > 0.0)) throw std::invalid_argument("ScenarioConfig: sigma must be positive");
  if (blobs < 0) throw std::invalid_argument("ScenarioConfig: blobs must be >= 0");
}

std::string describe(const ScenarioConfig& config) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "n=%lld h=%lld w=%lld d=%lld heads=%lld sigma=%g seed=%llu blobs=%lld",
                static_cast<long long>(config.n), static_cast<long long>(config.h),
                static_cast<long long>(config.w), static_cast<long long>(config.d),
                static_cast<long long>(config.heads), config.sigma,
                static_cast<unsigned long long>(config.seed),
                static_cast<long long>(config.blobs));
  return buf;
}

}  // namespace enact
