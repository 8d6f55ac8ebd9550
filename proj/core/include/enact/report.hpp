#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "enact/scenario.hpp"

namespace enact {

/// Everything the compression benchmark measures for one scenario.
///
/// Weight-element counts are exact tallies of attention-matrix entries;
/// peak-element counts size the largest transient score buffer either path
/// materializes for a single (sample, head) pair. Timing fields are
/// wall-clock and excluded from equality comparisons.
struct CompressionReport {
  ScenarioConfig config;
  std::vector<std::size_t> cluster_counts;   // per sample
  std::size_t total_clusters = 0;
  std::size_t baseline_weight_elements = 0;
  std::size_t ragged_weight_elements = 0;
  double compression_ratio = 1.0;            // total_clusters / (n * pixels)
  std::size_t baseline_peak_elements = 0;    // pixels * pixels
  std::size_t clustered_peak_elements = 0;   // pixels * max cluster count
  double baseline_seconds = 0.0;
  double clustered_seconds = 0.0;
  double pipeline_seconds = 0.0;

  void validate() const;
};

std::string report_to_json(const CompressionReport& report);
std::string report_to_csv(const CompressionReport& report);
CompressionReport report_from_json(const std::string& text);

/// True when every field except the timing fields matches exactly.
bool same_measurements(const CompressionReport& a, const CompressionReport& b);

/// Writes report.json and report.csv under `dir`, creating it if needed.
void write_report_files(const CompressionReport& report, const std::filesystem::path& dir);

}  // namespace enact
