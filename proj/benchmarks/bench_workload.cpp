#include <benchmark/benchmark.h>

#include "telemsim/workload.hpp"

using namespace telemsim;

static void BM_GenerateBatch(benchmark::State& state) {
  Scenario s = builtin_scenario("multi_phase_5tb", 1);
  i64 t = 0;
  for (auto _ : state) {
    AccessBatch b = generate_batch(s, t, t + 5);
    benchmark::DoNotOptimize(b.addrs.data());
    t = (t + 5) % (s.total_ms() - 5);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * 5 *
                          static_cast<int64_t>(s.accesses_per_ms));
}
BENCHMARK(BM_GenerateBatch);

static void BM_GenerateBatchHotspot(benchmark::State& state) {
  Scenario s = builtin_scenario("hotspot_2tb", 1);
  i64 t = 0;
  for (auto _ : state) {
    AccessBatch b = generate_batch(s, t, t + 5);
    benchmark::DoNotOptimize(b.addrs.data());
    t = (t + 5) % (s.total_ms() - 5);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * 5 *
                          static_cast<int64_t>(s.accesses_per_ms));
}
BENCHMARK(BM_GenerateBatchHotspot);
