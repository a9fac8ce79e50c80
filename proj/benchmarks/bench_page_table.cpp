#include <benchmark/benchmark.h>

#include <vector>

#include "telemsim/rng.hpp"
#include "telemsim/vm_model.hpp"

using namespace telemsim;

static void BM_RecordAccess(benchmark::State& state) {
  const u64 heap = static_cast<u64>(state.range(0)) * kGiB;
  SparsePageTable pt;
  pt.map_range(0, heap);
  Rng rng(1);
  std::vector<u64> addrs(4096);
  for (auto& a : addrs) a = rng.below(heap);
  size_t i = 0;
  for (auto _ : state) {
    pt.record_access(addrs[i++ & 4095]);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()));
}
BENCHMARK(BM_RecordAccess)->Arg(1)->Arg(100)->Arg(5120);

static void BM_BatchApply(benchmark::State& state) {
  const u64 heap = 5 * kTiB;
  const u64 hot = 10 * kGiB;
  SparsePageTable pt;
  pt.map_range(0, heap);
  Rng rng(1);
  std::vector<u64> addrs(static_cast<size_t>(state.range(0)));
  for (auto& a : addrs) a = kTiB + rng.below(hot);
  LevelIndexSets sets;
  for (auto _ : state) {
    sets.build(addrs);
    sets.apply_to(&pt);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_BatchApply)->Arg(3000)->Arg(30000);

static void BM_ClearTest(benchmark::State& state) {
  SparsePageTable pt;
  pt.map_range(0, kTiB);
  Rng rng(2);
  for (int i = 0; i < 100'000; i++) pt.record_access(rng.below(kTiB));
  for (auto _ : state) {
    EntryRef e = entry_covering(rng.below(kTiB), Level::kPte);
    benchmark::DoNotOptimize(pt.clear_accessed(e));
    benchmark::DoNotOptimize(pt.test_accessed(e));
  }
}
BENCHMARK(BM_ClearTest);
