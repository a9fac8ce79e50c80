#pragma once

#include <array>
#include <utility>

#include "telemsim/engine.hpp"

namespace telemsim {

enum class TelescopeVariant { kBounded, kFlex };

// Flex error thresholds, indexed by Level. An entry may overshoot a region
// by at most threshold * coverage(level) bytes. The bounded variant is the
// all-zeros special case.
struct VariantConfig {
  TelescopeVariant variant = TelescopeVariant::kBounded;
  std::array<double, kNumLevels> error_thresholds = {0, 0, 0, 0};

  static VariantConfig bounded() { return {}; }
  static VariantConfig flex() {
    VariantConfig c;
    c.variant = TelescopeVariant::kFlex;
    c.error_thresholds = {0.25, 0.25, 0.15, 0.15};  // PTE, PMD, PUD, PGD
    return c;
  }
  double threshold(Level l) const {
    return variant == TelescopeVariant::kBounded ? 0.0
                                                 : error_thresholds[static_cast<int>(l)];
  }
};

struct ProfileChoice {
  EntryRef entry;
  u64 overshoot_bytes = 0;  // entry coverage outside the region
};

// Highest level with at least one entry fully inside the region, plus that
// entry list. Sub-page slivers fall back to the PTE entry overlapping the
// region start.
std::pair<Level, std::vector<EntryRef>> candidate_entries_bounded(ByteRange region);

// Highest level with at least one overlapping entry whose overshoot is
// within the per-level threshold, plus all such entries at that level.
std::pair<Level, std::vector<EntryRef>> candidate_entries_flex(
    ByteRange region, const std::array<double, kNumLevels>& thresholds);

// The profiling choice for position `addr` inside the region: the highest
// level whose entry covering addr passes the variant's overshoot rule.
ProfileChoice profile_entry_at(ByteRange region, const VariantConfig& cfg, u64 addr);

// Per-interval rotation pick. Draws a position uniformly over the region and
// descends, which selects each maximal qualifying entry with probability
// proportional to the bytes of the region it covers. High-level entries
// dominate the draw while remainder tails still profile at their own highest
// fitting level, so the whole region is covered in expectation.
ProfileChoice pick_profile_entry(ByteRange region, const VariantConfig& cfg, Rng& rng);

// Page-table-tree profiling engine. Per region and sampling interval one
// entry is chosen by the variant rule, its ACCESSED bit is reset, and the
// region's count is bumped if the interval's traffic set it again. Region
// maintenance is the shared split/merge machinery.
class TreeProfilingEngine : public TelemetryEngine {
 public:
  TreeProfilingEngine(std::string tag, const Scenario& scenario, const IntervalConfig& intervals,
                      const EngineTuning& tuning, const VariantConfig& variant, u64 seed);

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
  const VariantConfig& variant() const { return variant_; }

 private:
  std::string tag_;
  IntervalConfig intervals_;
  EngineTuning tuning_;
  VariantConfig variant_;
  SparsePageTable pt_;
  RegionSet regions_;
  u64 seed_;
  u64 interval_index_ = 0;
  Rng maint_rng_;
  std::vector<EntryRef> chosen_;
  u64 covered_window_ = 0;
  i64 next_refresh_ms_ = -1;
  CostCounters cost_;
  CostCounters reported_;
};

}  // namespace telemsim
