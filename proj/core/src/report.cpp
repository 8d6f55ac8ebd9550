#include "enact/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace enact {
namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::ordered_json to_json_value(const CompressionReport& r) {
  nlohmann::ordered_json j;
  j["config"] = {{"n", r.config.n},         {"h", r.config.h},
                 {"w", r.config.w},         {"d", r.config.d},
                 {"heads", r.config.heads}, {"sigma", r.config.sigma},
                 {"seed", r.config.seed},   {"blobs", r.config.blobs}};
  j["cluster_counts"] = r.cluster_counts;
  j["total_clusters"] = r.total_clusters;
  j["baseline_weight_elements"] = r.baseline_weight_elements;
  j["ragged_weight_elements"] = r.ragged_weight_elements;
  j["compression_ratio"] = r.compression_ratio;
  j["baseline_peak_elements"] = r.baseline_peak_elements;
  j["clustered_peak_elements"] = r.clustered_peak_elements;
  j["baseline_seconds"] = r.baseline_seconds;
  j["clustered_seconds"] = r.clustered_seconds;
  j["pipeline_seconds"] = r.pipeline_seconds;
  return j;
}

}  // namespace

void CompressionReport::validate() const {
  config.validate();
  const std::size_t hw = config.pixels();
  const auto n = static_cast<std::size_t>(config.n);
  if (cluster_counts.size() != n) {
    throw std::runtime_error("CompressionReport: one cluster count per sample required");
  }
  std::size_t total = 0;
  std::size_t peak = 0;
  for (std::size_t c : cluster_counts) {
    if (c < 1 || c > hw) throw std::runtime_error("CompressionReport: cluster count out of range");
    total += c;
    peak = std::max(peak, c);
  }
  if (total_clusters != total) {
    throw std::runtime_error("CompressionReport: total_clusters does not match counts");
  }
  const auto heads = static_cast<std::size_t>(config.heads);
  if (baseline_weight_elements != n * heads * hw * hw) {
    throw std::runtime_error("CompressionReport: baseline weight-element count is inconsistent");
  }
  if (ragged_weight_elements != heads * hw * total) {
    throw std::runtime_error("CompressionReport: ragged weight-element count is inconsistent");
  }
  const double expected = static_cast<double>(total) / static_cast<double>(n * hw);
  if (compression_ratio != expected) {
    throw std::runtime_error("CompressionReport: compression_ratio does not match counts");
  }
  if (baseline_peak_elements != hw * hw) {
    throw std::runtime_error("CompressionReport: baseline peak-element count is inconsistent");
  }
  if (clustered_peak_elements != hw * peak) {
    throw std::runtime_error("CompressionReport: clustered peak-element count is inconsistent");
  }
  if (baseline_seconds < 0.0 || clustered_seconds < 0.0 || pipeline_seconds < 0.0) {
    throw std::runtime_error("CompressionReport: negative timing");
  }
}

std::string report_to_json(const CompressionReport& report) {
  return to_json_value(report).dump(2) + "\n";
}

std::string report_to_csv(const CompressionReport& report) {
  std::string out = "key,value\n";
  auto put_int = [&out](const char* key, long long v) {
    out += key;
    out += ',';
    out += std::to_string(v);
    out += '\n';
  };
  auto put_double = [&out](const char* key, double v) {
    out += key;
    out += ',';
    out += fmt_double(v);
    out += '\n';
  };
  put_int("n", report.config.n);
  put_int("h", report.config.h);
  put_int("w", report.config.w);
  put_int("d", report.config.d);
  put_int("heads", report.config.heads);
  put_double("sigma", report.config.sigma);
  put_int("seed", static_cast<long long>(report.config.seed));
  put_int("blobs", report.config.blobs);
  for (std::size_t i = 0; i < report.cluster_counts.size(); ++i) {
    put_int(("cluster_count_" + std::to_string(i)).c_str(),
            static_cast<long long>(report.cluster_counts[i]));
  }
  put_int("total_clusters", static_cast<long long>(report.total_clusters));
  put_int("baseline_weight_elements", static_cast<long long>(report.baseline_weight_elements));
  put_int("ragged_weight_elements", static_cast<long long>(report.ragged_weight_elements));
  put_double("compression_ratio", report.compression_ratio);
  put_int("baseline_peak_elements", static_cast<long long>(report.baseline_peak_elements));
  put_int("clustered_peak_elements", static_cast<long long>(report.clustered_peak_elements));
  put_double("baseline_seconds", report.baseline_seconds);
  put_double("clustered_seconds", report.clustered_seconds);
  put_double("pipeline_seconds", report.pipeline_seconds);
  return out;
}

CompressionReport report_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    CompressionReport r;
    const auto& c = j.at("config");
    r.config.n = c.at("n").get<std::int64_t>();
    r.config.h = c.at("h").get<std::int64_t>();
    r.config.w = c.at("w").get<std::int64_t>();
    r.config.d = c.at("d").get<std::int64_t>();
    r.config.heads = c.at("heads").get<std::int64_t>();
    r.config.sigma = c.at("sigma").get<double>();
    r.config.seed = c.at("seed").get<std::uint64_t>();
    r.config.blobs = c.at("blobs").get<std::int64_t>();
    r.cluster_counts = j.at("cluster_counts").get<std::vector<std::size_t>>();
    r.total_clusters = j.at("total_clusters").get<std::size_t>();
    r.baseline_weight_elements = j.at("baseline_weight_elements").get<std::size_t>();
    r.ragged_weight_elements = j.at("ragged_weight_elements").get<std::size_t>();
    r.compression_ratio = j.at("compression_ratio").get<double>();
    r.baseline_peak_elements = j.at("baseline_peak_elements").get<std::size_t>();
    r.clustered_peak_elements = j.at("clustered_peak_elements").get<std::size_t>();
    r.baseline_seconds = j.at("baseline_seconds").get<double>();
    r.clustered_seconds = j.at("clustered_seconds").get<double>();
    r.pipeline_seconds = j.at("pipeline_seconds").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("report_from_json: ") + e.what());
  }
}

bool same_measurements(const CompressionReport& a, const CompressionReport& b) {
  return a.config.n == b.config.n && a.config.h == b.config.h && a.config.w == b.config.w &&
         a.config.d == b.config.d && a.config.heads == b.config.heads &&
         a.config.sigma == b.config.sigma && a.config.seed == b.config.seed &&
         a.config.blobs == b.config.blobs && a.cluster_counts == b.cluster_counts &&
         a.total_clusters == b.total_clusters &&
         a.baseline_weight_elements == b.baseline_weight_elements &&
         a.ragged_weight_elements == b.ragged_weight_elements &&
         a.compression_ratio == b.compression_ratio &&
         a.baseline_peak_elements == b.baseline_peak_elements &&
         a.clustered_peak_elements == b.clustered_peak_elements;
}

void write_report_files(const CompressionReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "report.json", std::ios::binary);
    if (!out) throw std::runtime_error("write_report_files: cannot open report.json");
    out << report_to_json(report);
  }
  {
    std::ofstream out(dir / "report.csv", std::ios::binary);
    if (!out) throw std::runtime_error("write_report_files: cannot open report.csv");
    out << report_to_csv(report);
  }
}

}  // namespace enact
