#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <string>

#include "CLI11.hpp"
#include "enact/clustering.hpp"
#include "enact/harness.hpp"
#include "enact/rng.hpp"
#include "enact/synthetic.hpp"

namespace {

std::filesystem::path output_dir() {
  const char* env = std::getenv("ENACT_OUT_DIR");
  return env != nullptr && *env != '\0' ? std::filesystem::path(env)
                                        : std::filesystem::path("out");
}

void add_scenario_options(CLI::App& app, enact::ScenarioConfig& cfg) {
  app.add_option("--n", cfg.n, "batch size");
  app.add_option("--h", cfg.h, "grid height");
  app.add_option("--w", cfg.w, "grid width");
  app.add_option("--d", cfg.d, "channels");
  app.add_option("--heads", cfg.heads, "attention heads");
  app.add_option("--sigma", cfg.sigma, "smoothing kernel std");
  app.add_option("--seed", cfg.seed, "master seed");
  app.add_option("--blobs", cfg.blobs, "planted bumps per sample");
}

int run_bench(const enact::ScenarioConfig& cfg) {
  const auto report = enact::run_compression_benchmark(cfg);
  report.validate();
  const auto dir = output_dir();
  enact::write_report_files(report, dir);
  std::printf("scenario          %s\n", enact::describe(cfg).c_str());
  std::printf("clusters          %zu of %zu pixel slots\n", report.total_clusters,
              static_cast<std::size_t>(cfg.n) * cfg.pixels());
  std::printf("compression       %.6f\n", report.compression_ratio);
  std::printf("weight elements   baseline %zu, clustered %zu\n",
              report.baseline_weight_elements, report.ragged_weight_elements);
  std::printf("peak transient    baseline %zu, clustered %zu\n",
              report.baseline_peak_elements, report.clustered_peak_elements);
  std::printf("seconds           baseline %.6f, clustered %.6f, pipeline %.6f\n",
              report.baseline_seconds, report.clustered_seconds, report.pipeline_seconds);
  std::printf("wrote %s and %s\n", (dir / "report.json").string().c_str(),
              (dir / "report.csv").string().c_str());
  return 0;
}

int run_gradcheck(const enact::ScenarioConfig& cfg) {
  const auto report = enact::run_gradient_check(cfg);
  for (const auto& block : report.blocks) {
    std::printf("%-16s max rel err %.3e  max abs err %.3e  %s\n", block.name.c_str(),
                block.max_rel_err, block.max_abs_err, block.pass ? "ok" : "FAIL");
  }
  if (!report.pass) {
    std::fprintf(stderr, "gradient check failed (tolerance %g at eps %g)\n",
                 enact::kGradCheckTol, enact::kGradCheckEps);
    return 1;
  }
  return 0;
}

int run_train(const enact::ScenarioConfig& cfg, std::int64_t steps, double lr) {
  const auto result = enact::run_toy_training(cfg, steps, lr);
  const auto dir = output_dir();
  enact::write_loss_csv(result.losses, dir / "loss.csv");
  std::printf("scenario          %s\n", enact::describe(cfg).c_str());
  std::printf("steps             %lld (lr %g)\n", static_cast<long long>(steps), lr);
  std::printf("loss              %.17g -> %.17g\n", result.losses.front(),
              result.losses.back());
  std::printf("wrote %s\n", (dir / "loss.csv").string().c_str());
  return 0;
}

int run_inspect(const enact::ScenarioConfig& cfg, std::size_t sample) {
  cfg.validate();
  if (sample >= static_cast<std::size_t>(cfg.n)) {
    throw std::invalid_argument("inspect: sample index out of range");
  }
  const auto batch = enact::generate_synthetic_batch(cfg);
  const auto head =
      enact::LinearHead::init(cfg.d, enact::mix_seed(cfg.seed, enact::kHeadSeedSalt));
  const auto stages = enact::run_pipeline(batch, head, cfg.sigma);

  const auto dir = output_dir();
  std::filesystem::create_directories(dir);
  const auto path = dir / "inspect.csv";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("inspect: cannot open " + path.string());
  out << "pixel,pdf,information,smoothed,d2,sign,region\n";

  const auto& runs = stages.partition.samples[sample];
  std::size_t region = 0;
  char buf[256];
  for (std::size_t i = 0; i < cfg.pixels(); ++i) {
    if (i >= runs[region].end) ++region;
    const double d2 = stages.d2.size() > 0 ? stages.d2(sample, i) : 0.0;
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g,%d,%zu\n", i,
                  stages.pdf.values(sample, i), stages.information.values(sample, i),
                  stages.smoothed.values(sample, i), d2, runs[region].sign, region);
    out << buf;
  }
  std::printf("scenario          %s\n", enact::describe(cfg).c_str());
  std::printf("sample %zu splits into %zu regions\n", sample, runs.size());
  std::printf("wrote %s\n", path.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy-guided key/value clustering harness"};
  app.set_help_flag("--help", "print help and exit");  // frees --h for the grid height
  app.require_subcommand(1);
  app.fallthrough();

  enact::ScenarioConfig cfg;
  add_scenario_options(app, cfg);
  app.set_config("--config", "", "key=value file with scenario settings; flags win");

  auto* bench = app.add_subcommand("bench", "compare clustered and baseline attention");
  bench->fallthrough();

  auto* gradcheck =
      app.add_subcommand("gradcheck", "analytic gradients vs central differences");
  gradcheck->fallthrough();

  std::int64_t steps = 100;
  double lr = enact::kToyLearningRate;
  auto* train = app.add_subcommand("train", "fit the information head by SGD");
  train->fallthrough();
  train->add_option("--steps", steps, "SGD steps");
  train->add_option("--lr", lr, "learning rate");

  std::size_t sample = 0;
  auto* inspect = app.add_subcommand("inspect", "dump per-pixel pipeline stages to csv");
  inspect->fallthrough();
  inspect->add_option("--sample", sample, "sample index to dump");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bench->parsed()) return run_bench(cfg);
    if (gradcheck->parsed()) return run_gradcheck(cfg);
    if (train->parsed()) return run_train(cfg, steps, lr);
    if (inspect->parsed()) return run_inspect(cfg, sample);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
