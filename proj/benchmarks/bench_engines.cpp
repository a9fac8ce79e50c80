#include <benchmark/benchmark.h>

#include "telemsim/baselines.hpp"
#include "telemsim/telescope.hpp"
#include "telemsim/workload.hpp"

using namespace telemsim;

namespace {

// One profile window of engine work on subtb_100g traffic.
template <typename Engine>
void run_windows(benchmark::State& state, Engine& engine, const Scenario& s) {
  i64 t = 0;
  LevelIndexSets sets;
  for (auto _ : state) {
    for (i64 tick = 0; tick < 200; tick += 5) {
      AccessBatch batch = generate_batch(s, t + tick, t + tick + 5);
      sets.build(batch.addrs);
      engine.begin_interval(t + tick);
      engine.observe_batch(batch, sets);
      engine.end_interval(t + tick + 5);
    }
    benchmark::DoNotOptimize(engine.end_window(t, t + 200));
    t = (t + 200) % (s.total_ms() - 200);
  }
}

}  // namespace

static void BM_TreeProfilingWindow(benchmark::State& state) {
  Scenario s = builtin_scenario("subtb_100g", 1);
  TreeProfilingEngine engine("telescope-bnd", s, {}, {}, VariantConfig::bounded(), 1);
  run_windows(state, engine, s);
}
BENCHMARK(BM_TreeProfilingWindow);

static void BM_RegionSamplingWindow(benchmark::State& state) {
  Scenario s = builtin_scenario("subtb_100g", 1);
  RegionSamplingEngine engine("damon-mod", s, {}, {}, 1);
  run_windows(state, engine, s);
}
BENCHMARK(BM_RegionSamplingWindow);

static void BM_EventSamplingWindow(benchmark::State& state) {
  Scenario s = builtin_scenario("subtb_100g", 1);
  EventSamplingEngine engine("pmu-agg", s, {}, {}, PmuConfig{}, 1);
  run_windows(state, engine, s);
}
BENCHMARK(BM_EventSamplingWindow);
