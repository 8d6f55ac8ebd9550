#pragma once

#include <cstdint>
#include <string>

namespace enact {

/// One harness scenario. Field names double as config-file keys and CLI flags.
struct ScenarioConfig {
  std::int64_t n = 4;       // batch size
  std::int64_t h = 32;      // grid height
  std::int64_t w = 32;      // grid width
  std::int64_t d = 64;      // channels
  std::int64_t heads = 8;   // attention heads
  double sigma = 5.0;       // smoothing kernel std
  std::uint64_t seed = 7;   // master seed
  std::int64_t blobs = 3;   // planted bumps per sample

  std::size_t pixels() const { return static_cast<std::size_t>(h) * static_cast<std::size_t>(w); }
  void validate() const;
};

std::string describe(const ScenarioConfig& config);

}  // namespace enact
