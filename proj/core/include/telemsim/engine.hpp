#pragma once

#include <memory>
#include <string>
#include <vector>

#include "telemsim/interval_set.hpp"
#include "telemsim/region.hpp"
#include "telemsim/units.hpp"
#include "telemsim/vm_model.hpp"
#include "telemsim/workload.hpp"

namespace telemsim {

struct CostCounters {
  u64 bit_flips = 0;
  u64 work_units = 0;
  u64 samples_taken = 0;
  u64 interrupts = 0;

  CostCounters delta_since(const CostCounters& prev) const {
    return {bit_flips - prev.bit_flips, work_units - prev.work_units,
            samples_taken - prev.samples_taken, interrupts - prev.interrupts};
  }
  void accumulate(const CostCounters& d) {
    bit_flips += d.bit_flips;
    work_units += d.work_units;
    samples_taken += d.samples_taken;
    interrupts += d.interrupts;
  }
};

struct ScoredRange {
  ByteRange range;
  double score = 0;
};

struct RegionRow {
  ByteRange range;
  u32 access_count = 0;
  u32 age = 0;
  u32 score = 0;
};

// Per-profile-window snapshot every engine emits: the ranges it calls hot,
// the raw region/block rows behind them, and what the window cost.
struct EngineReport {
  i64 t_start_ms = 0;
  i64 t_end_ms = 0;
  std::vector<ScoredRange> hot_ranges;  // sorted by start, disjoint
  std::vector<RegionRow> regions;
  CostCounters cost;        // this window only
  u64 covered_bytes = 0;    // address space covered by this window's bit resets
};

std::vector<ByteRange> hot_ranges_only(const EngineReport& r);

// One telemetry technique under simulation. The harness drives the shared
// clock: begin_interval at each of the engine's sampling boundaries, then
// one or more batches, then end_interval; end_window closes a profile
// window. Engines own a private page table so one engine's bit resets can
// never disturb another's.
class TelemetryEngine {
 public:
  virtual ~TelemetryEngine() = default;

  virtual const std::string& tag() const = 0;
  virtual i64 sampling_interval_ms() const = 0;

  virtual void begin_interval(i64 t_ms) = 0;
  virtual void observe_batch(const AccessBatch& batch, const LevelIndexSets& sets) = 0;
  virtual void end_interval(i64 t_end_ms) = 0;
  virtual EngineReport end_window(i64 t_start_ms, i64 t_end_ms) = 0;

  virtual const SparsePageTable* page_table() const { return nullptr; }
  virtual CostCounters total_cost() const = 0;
};

struct EngineTuning {
  // A region (or block) is reported hot when its access count is strictly
  // greater than this; the same threshold gates migration.
  u32 hot_min_count = 5;
  u32 pmu_block_min_hits = 2;
  RegionConfig region;
};

std::vector<std::string> known_engine_tags();
bool is_known_engine_tag(const std::string& tag);

// Builds an engine by tag: damon-mod, damon-agg, pmu-mod, pmu-agg,
// telescope-bnd, telescope-flx, scan-agg, scan-mod, scan-con. The engine
// seed should be derived from (run seed, tag) so joint and solo runs agree.
// Throws std::invalid_argument for unknown tags.
std::unique_ptr<TelemetryEngine> make_engine(const std::string& tag, const Scenario& scenario,
                                             const IntervalConfig& intervals,
                                             const EngineTuning& tuning, u64 engine_seed);

}  // namespace telemsim
