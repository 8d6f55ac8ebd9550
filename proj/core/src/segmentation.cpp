#include "enact/segmentation.hpp"

#include <string>

namespace enact {

std::vector<std::size_t> RegionPartition::cluster_counts() const {
  std::vector<std::size_t> counts(samples.size());
  for (std::size_t n = 0; n < samples.size(); ++n) counts[n] = samples[n].size();
  return counts;
}

std::size_t RegionPartition::total_clusters() const {
  std::size_t total = 0;
  for (const auto& runs : samples) total += runs.size();
  return total;
}

void RegionPartition::validate() const {
  for (std::size_t n = 0; n < samples.size(); ++n) {
    const auto& runs = samples[n];
    const std::string where = "RegionPartition: sample " + std::to_string(n);
    check_arg(!runs.empty(), where + " has no runs");
    std::size_t cursor = 0;
    int prev_sign = 0;
    for (const Run& run : runs) {
      check_arg(run.begin == cursor, where + " has a gap or overlap");
      check_arg(run.end > run.begin, where + " has an empty run");
      check_arg(run.sign == +1 || run.sign == -1, where + " has an invalid sign");
      check_arg(run.sign != prev_sign, where + " has adjacent runs of equal sign");
      prev_sign = run.sign;
      cursor = run.end;
    }
    check_arg(cursor == pixels, where + " does not tile the pixel axis");
  }
}

DenseArray second_derivative(const DenseArray& signal) {
  check_arg(signal.rank() == 2, "second_derivative: signal must be batch x pixels");
  const std::size_t n = signal.extent(0), hw = signal.extent(1);
  check_arg(hw >= 3, "second_derivative: degenerate input, needs at least 3 pixels");
  DenseArray out({n, hw});
  for (std::size_t s = 0; s < n; ++s) {
    auto src = signal.row(s);
    auto dst = out.row(s);
    for (std::size_t i = 0; i < hw; ++i) {
      const double left = src[i == 0 ? 0 : i - 1];
      const double right = src[i + 1 == hw ? hw - 1 : i + 1];
      dst[i] = -left + 2.0 * src[i] - right;
    }
  }
  return out;
}

SignField sign_step(const DenseArray& d2) {
  check_arg(d2.rank() == 2, "sign_step: input must be batch x pixels");
  SignField field{d2.extent(0), d2.extent(1), {}};
  field.values.resize(d2.size());
  for (std::size_t s = 0; s < field.batch; ++s) {
    auto row = d2.row(s);
    std::int8_t current = +1;  // tie-break at sample start
    for (std::size_t i = 0; i < field.pixels; ++i) {
      if (row[i] < 0.0)
        current = +1;
      else if (row[i] > 0.0)
        current = -1;
      field.values[s * field.pixels + i] = current;
    }
  }
  return field;
}

RegionPartition partition_runs(const SignField& signs) {
  check_arg(signs.pixels >= 1, "partition_runs: empty pixel axis");
  RegionPartition partition;
  partition.pixels = signs.pixels;
  partition.samples.resize(signs.batch);
  for (std::size_t n = 0; n < signs.batch; ++n) {
    auto& runs = partition.samples[n];
    std::size_t begin = 0;
    std::int8_t sign = signs.at(n, 0);
    check_arg(sign == 1 || sign == -1, "partition_runs: sign entries must be +-1");
    for (std::size_t i = 1; i < signs.pixels; ++i) {
      const std::int8_t s = signs.at(n, i);
      check_arg(s == 1 || s == -1, "partition_runs: sign entries must be +-1");
      if (s != sign) {
        runs.push_back({begin, i, sign});
        begin = i;
        sign = s;
      }
    }
    runs.push_back({begin, signs.pixels, sign});
  }
  return partition;
}

RegionPartition single_run_partition(std::size_t batch, std::size_t pixels) {
  check_arg(pixels >= 1, "single_run_partition: empty pixel axis");
  RegionPartition partition;
  partition.pixels = pixels;
  partition.samples.assign(batch, {Run{0, pixels, +1}});
  return partition;
}

RegionPartition singleton_partition(std::size_t batch, std::size_t pixels) {
  check_arg(pixels >= 1, "singleton_partition: empty pixel axis");
  RegionPartition partition;
  partition.pixels = pixels;
  partition.samples.resize(batch);
  for (auto& runs : partition.samples) {
    runs.resize(pixels);
    for (std::size_t i = 0; i < pixels; ++i)
      runs[i] = {i, i + 1, i % 2 == 0 ? +1 : -1};
  }
  return partition;
}

}  // namespace enact
