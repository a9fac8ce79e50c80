#pragma once

#include <array>
#include <unordered_map>

#include "telemsim/engine.hpp"

namespace telemsim {

// ---------------------------------------------------------------------------
// Linear scanning

enum class ScanMode { kAggressive, kModerate, kConservative };

struct ScanThrottle {
  ScanMode mode = ScanMode::kAggressive;
  double sleep_ms_per_chunk = 0;  // 0 / 10 / 100 for agg / mod / con
  u64 chunk_bytes = 256 * kMiB;
  // Active bit-flipping rate while not sleeping. Calibrated so a full scan
  // of 5 TiB takes 110 s with no sleeps.
  double scan_rate_bytes_per_s = static_cast<double>(5 * kTiB) / 110.0;
  // Scales the utilization proxy; only the ordering across modes is
  // meaningful, absolute percentages are hardware-specific.
  double duty_factor = 0.5;

  static ScanThrottle preset(ScanMode m);
};

struct ScanModelResult {
  double scan_time_s = 0;
  double cpu_utilization = 0;
};

// Closed-form cost of one full scan pass: active time plus one sleep per
// 256 MiB chunk. Utilization is active/total scaled by the duty factor.
ScanModelResult linear_scan_model(u64 heap_bytes, const ScanThrottle& throttle);

// Two-pass scanning engine: pass 1 clears every PTE bit, pass 2 collects the
// set ones as the hot set. The cursor advances at the throttle's rate inside
// the simulated clock, sleeping after every chunk.
class LinearScanEngine : public TelemetryEngine {
 public:
  LinearScanEngine(std::string tag, const Scenario& scenario, const IntervalConfig& intervals,
                   const ScanThrottle& throttle);

  const std::string& tag() const override { return tag_; }
  i64 sampling_interval_ms() const override { return intervals_.sampling_interval_ms; }
  void begin_interval(i64) override {}
  void observe_batch(const AccessBatch& batch, const LevelIndexSets& sets) override;
  void end_interval(i64 t_end_ms) override;
  EngineReport end_window(i64 t_start_ms, i64 t_end_ms) override;
  const SparsePageTable* page_table() const override { return &pt_; }
  CostCounters total_cost() const override { return cost_; }

  // Scan for `ms` of simulated time. Exposed for direct stepping in tests.
  void advance_ms(double ms);
  // Runs the cursor to the end of the current pass, ignoring the throttle.
  void finish_pass();
  int completed_double_passes() const { return completed_double_passes_; }
  const std::vector<ByteRange>& last_hot_set() const { return last_hot_; }

  SparsePageTable& table() { return pt_; }

 private:
  void step_bytes(u64 bytes);
  void advance_cursor_done_range();

  std::string tag_;
  IntervalConfig intervals_;
  ScanThrottle throttle_;
  SparsePageTable pt_;

  int pass_ = 1;  // 1: clear, 2: collect
  size_t range_idx_ = 0;
  u64 offset_ = 0;  // within current mapped range
  double sleep_debt_ms_ = 0;
  u64 chunk_done_ = 0;
  std::vector<ByteRange> current_hot_;
  std::vector<ByteRange> last_hot_;
  int completed_double_passes_ = 0;
  CostCounters cost_;
  CostCounters reported_;
};

// ---------------------------------------------------------------------------
// Region-based sampling

// Samples one address per region per interval: the covering PTE bit is reset
// at the interval start and checked at the end; a set bit bumps the region's
// access count. Region set evolves by the shared split/merge maintenance.
class RegionSamplingEngine : public TelemetryEngine {
 public:
  RegionSamplingEngine(std::string tag, const Scenario& scenario, const IntervalConfig& intervals,
                       const EngineTuning& tuning, u64 seed);

  const std::string& tag() const override { return tag_; }
  i64 sampling_interval_ms() const override { return intervals_.sampling_interval_ms; }
  void begin_interval(i64 t_ms) override;
  void observe_batch(const AccessBatch& batch, const LevelIndexSets& sets) override;
  void end_interval(i64 t_end_ms) override;
  EngineReport end_window(i64 t_start_ms, i64 t_end_ms) override;
  const SparsePageTable* page_table() const override { return &pt_; }
  CostCounters total_cost() const override { return cost_; }

  RegionSet& region_set() { return regions_; }
  SparsePageTable& table() { return pt_; }

 private:
  std::string tag_;
  IntervalConfig intervals_;
  EngineTuning tuning_;
  SparsePageTable pt_;
  RegionSet regions_;
  Rng rng_;
  Rng maint_rng_;
  std::vector<EntryRef> sampled_;
  u64 covered_window_ = 0;
  i64 next_refresh_ms_ = -1;
  CostCounters cost_;
  CostCounters reported_;
};

// ---------------------------------------------------------------------------
// Hardware-event sampling

struct PmuConfig {
  double sample_freq_hz = 10'000;
  u64 aggregation_granularity = 2 * kMiB;
  // Interrupt rate above which the effective frequency halves for
  // subsequent windows, mirroring kernel-side PMU throttling.
  double throttle_ceiling_per_s = 100'000;
};

// Bernoulli-thins the access stream at the configured event frequency and
// histograms sampled addresses by 2 MiB block. Blocks with enough hits are
// reported hot; without enough events the hot region is undersampled, which
// is exactly the scaling limitation under study.
class EventSamplingEngine : public TelemetryEngine {
 public:
  EventSamplingEngine(std::string tag, const Scenario& scenario, const IntervalConfig& intervals,
                      const EngineTuning& tuning, const PmuConfig& cfg, u64 seed);

  const std::string& tag() const override { return tag_; }
  i64 sampling_interval_ms() const override { return intervals_.sampling_interval_ms; }
  void begin_interval(i64) override {}
  void observe_batch(const AccessBatch& batch, const LevelIndexSets& sets) override;
  void end_interval(i64) override {}
  EngineReport end_window(i64 t_start_ms, i64 t_end_ms) override;
  CostCounters total_cost() const override { return cost_; }

  double effective_freq_hz() const { return effective_freq_hz_; }
  const std::unordered_map<u64, u32>& window_histogram() const { return histogram_; }

 private:
  std::string tag_;
  IntervalConfig intervals_;
  EngineTuning tuning_;
  PmuConfig cfg_;
  double effective_freq_hz_;
  Rng rng_;
  std::unordered_map<u64, u32> histogram_;  // block index -> hits this window
  u64 window_samples_ = 0;
  CostCounters cost_;
  CostCounters reported_;
};

}  // namespace telemsim
