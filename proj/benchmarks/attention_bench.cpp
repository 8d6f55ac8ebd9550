#include <benchmark/benchmark.h>

#include "enact/attention.hpp"
#include "enact/clustering.hpp"
#include "enact/harness.hpp"
#include "enact/rng.hpp"
#include "enact/synthetic.hpp"

namespace {

enact::ScenarioConfig scenario_for(std::int64_t side) {
  enact::ScenarioConfig cfg;
  cfg.n = 2;
  cfg.h = side;
  cfg.w = side;
  cfg.d = 32;
  cfg.heads = 4;
  cfg.sigma = 5.0;
  cfg.seed = 7;
  cfg.blobs = 3;
  return cfg;
}

struct Fixture {
  enact::ScenarioConfig cfg;
  enact::FeatureBatch batch;
  enact::LinearHead head;
  enact::EnactResult clusters;
};

Fixture make_fixture(std::int64_t side) {
  Fixture f;
  f.cfg = scenario_for(side);
  f.batch = enact::generate_synthetic_batch(f.cfg);
  f.head = enact::LinearHead::init(f.cfg.d, enact::mix_seed(f.cfg.seed, enact::kHeadSeedSalt));
  f.clusters = enact::enact_forward(f.batch, f.batch, f.head, f.cfg.sigma);
  return f;
}

void BM_AttentionBaseline(benchmark::State& state) {
  const Fixture f = make_fixture(state.range(0));
  for (auto _ : state) {
    auto out = enact::attention_baseline(f.batch, f.batch, f.batch,
                                         static_cast<std::size_t>(f.cfg.heads));
    benchmark::DoNotOptimize(out.values.data.data());
  }
  state.counters["pixels"] = static_cast<double>(f.cfg.pixels());
}

void BM_AttentionClustered(benchmark::State& state) {
  const Fixture f = make_fixture(state.range(0));
  for (auto _ : state) {
    auto out = enact::attention_clustered(f.batch, f.clusters.keys, f.clusters.values,
                                          static_cast<std::size_t>(f.cfg.heads));
    benchmark::DoNotOptimize(out.values.data.data());
  }
  state.counters["pixels"] = static_cast<double>(f.cfg.pixels());
  state.counters["clusters"] = static_cast<double>(f.clusters.diagnostics.total_clusters);
}

void BM_ClusterPipeline(benchmark::State& state) {
  const Fixture f = make_fixture(state.range(0));
  for (auto _ : state) {
    auto result = enact::enact_forward(f.batch, f.batch, f.head, f.cfg.sigma);
    benchmark::DoNotOptimize(result.keys.features.data.data());
  }
  state.counters["pixels"] = static_cast<double>(f.cfg.pixels());
}

BENCHMARK(BM_AttentionBaseline)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AttentionClustered)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClusterPipeline)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
