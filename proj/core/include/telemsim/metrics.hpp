#pragma once

#include <string>
#include <vector>

#include "telemsim/engine.hpp"
#include "telemsim/interval_set.hpp"
#include "telemsim/workload.hpp"

namespace telemsim {

struct PrScore {
  double precision = 0;
  double recall = 0;
  bool recall_defined = true;  // false when the truth set is empty
  i64 t_ms = 0;
};

// Byte-overlap precision/recall. With 4 KiB-aligned ranges this equals the
// page-count definition without materializing page sets.
//   precision = |reported ∩ truth| / |reported|   (0 if nothing reported)
//   recall    = |reported ∩ truth| / |truth|      (undefined if truth empty)
PrScore precision_recall(const std::vector<ByteRange>& reported, const RangeSet& truth);

// Time x address-offset score grid; plotted downstream from CSV.
class HeatmapGrid {
 public:
  HeatmapGrid(i64 t_total_ms, u64 addr_span, size_t time_buckets, size_t addr_buckets);

  // Adds each reported range's score into the intersected cells, split by
  // byte-overlap fraction (weights sum to 1 per range).
  void accumulate(const EngineReport& rep);

  double cell(size_t time_bucket, size_t addr_bucket) const;
  size_t time_buckets() const { return time_buckets_; }
  size_t addr_buckets() const { return addr_buckets_; }
  double total_mass() const;

  // Header `t_ms,offset_start,score`, one row per non-zero cell.
  std::string to_csv() const;

 private:
  i64 t_total_ms_;
  u64 addr_span_;
  size_t time_buckets_;
  size_t addr_buckets_;
  std::vector<double> cells_;  // time-major
};

// One profile window of one engine, as recorded by the harness.
struct WindowStats {
  i64 t_start_ms = 0;
  i64 t_end_ms = 0;
  PrScore pr;
  CostCounters cost;       // window deltas
  u64 covered_bytes = 0;   // span covered by this window's bit resets
  u64 reported_bytes = 0;  // total length of reported hot ranges
};

struct EngineSeries {
  std::string engine;
  std::vector<WindowStats> windows;
};

struct PhaseSummaryRow {
  std::string engine;
  int phase = 0;
  double mean_precision = 0;
  double mean_recall = 0;
  u64 bit_flips = 0;
  u64 work_units = 0;
  double peak_utilization = 0;  // proxy: work_units * ns_per_unit / window
};

struct SummaryConfig {
  // Windows this close after a phase boundary (the start of the run
  // included) are excluded from the means while the telemetry re-converges.
  int exclusion_windows = 10;
  double work_unit_ns = 100.0;
};

std::vector<PhaseSummaryRow> summarize(const Scenario& scenario,
                                       const std::vector<EngineSeries>& series,
                                       const SummaryConfig& cfg = {});

}  // namespace telemsim
