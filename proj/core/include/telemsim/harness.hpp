#pragma once

#include <string>
#include <vector>

#include "telemsim/engine.hpp"
#include "telemsim/metrics.hpp"
#include "telemsim/tiering.hpp"
#include "telemsim/workload.hpp"

namespace telemsim {

struct RunConfig {
  Scenario scenario;
  std::vector<std::string> engine_tags;
  IntervalConfig intervals;
  i64 duration_ms = 0;  // 0: the scenario's full duration; truncated to whole windows
  u64 seed = 1;
  std::string out_dir;  // empty: keep results in memory only
  bool tiering = false;
  // With tiering enabled, telemetry and migration start after this much
  // scenario time; the run before that measures the far-tier baseline.
  i64 warmup_ms = 150'000;
  EngineTuning tuning;
  TierModel tier;
  TieringPolicy policy;
  size_t heatmap_time_buckets = 200;
  size_t heatmap_addr_buckets = 200;

  void validate() const;  // throws naming the offending field
};

struct ThroughputPoint {
  i64 t_ms = 0;
  double ops_per_s = 0;
  u64 near_bytes = 0;
};

struct RunResult {
  Scenario scenario;
  i64 duration_ms = 0;
  std::vector<EngineSeries> series;        // one per engine, harness order
  std::vector<PhaseSummaryRow> summary;
  // Tiering-only outputs (driver is the first engine).
  std::vector<ThroughputPoint> throughput;
  u64 migrated_bytes_total = 0;
  double steady_ops_per_s = 0;    // mean over the last quarter of the run
  double baseline_ops_per_s = 0;  // everything-far reference

  const EngineSeries* series_for(const std::string& tag) const;
};

// Executes one scenario run: per tick the access batch is generated once and
// replayed into every engine's private page table between that engine's bit
// resets and checks; profile windows aggregate, report, and (optionally)
// migrate. Deterministic for a fixed config.
RunResult run(const RunConfig& config);

// Reads summary.csv from each run directory (same scenario required) and
// emits a side-by-side comparison CSV. Throws on mismatched scenarios or
// missing files, naming the path.
std::string compare_runs(const std::vector<std::string>& run_dirs);

}  // namespace telemsim
