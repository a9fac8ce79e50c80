#pragma once

#include <vector>

#include "telemsim/engine.hpp"
#include "telemsim/interval_set.hpp"
#include "telemsim/units.hpp"
#include "telemsim/workload.hpp"

namespace telemsim {

struct TierModel {
  double near_latency_ns = 100.0;
  double far_latency_ns = 300.0;
  u64 near_capacity_bytes = 64 * kGiB;
  double migration_bandwidth_bytes_per_s = 10.0 * static_cast<double>(kGiB);

  void validate() const;
};

struct TieringPolicy {
  u32 hot_min_count = 5;              // migrate regions with count strictly above
  u64 skip_region_bytes = 4 * kGiB;   // larger regions wait for further splits
  u64 budget_bytes_per_window = 10 * kGiB;
};

// Near-tier residency. Entries are the migrated units; they keep the score
// they last had so capacity eviction can pick the coldest.
class Placement {
 public:
  struct NearEntry {
    ByteRange range;
    double score = 0;
  };

  bool is_near(u64 addr) const { return near_set_.contains(addr); }
  const RangeSet& near_set() const { return near_set_; }
  const std::vector<NearEntry>& entries() const { return entries_; }
  u64 near_bytes() const { return near_set_.total_bytes(); }

  // Moves a range near. Returns evicted bytes once capacity pressure forced
  // the coldest entries out.
  u64 admit(ByteRange r, double score, u64 capacity_bytes);
  // Refreshes entry scores from a report (max overlapping region score).
  void update_scores(const EngineReport& rep);

 private:
  std::vector<NearEntry> entries_;  // sorted by range.start
  RangeSet near_set_;
};

struct MigrationPlan {
  struct Item {
    ByteRange range;  // far-resident bytes to move
    double score = 0;
  };
  std::vector<Item> items;

  u64 total_bytes() const {
    u64 t = 0;
    for (const auto& i : items) t += i.range.len();
    return t;
  }
};

// Hot-region migration planning: regions with access count above the
// threshold qualify, large regions are skipped until later windows split
// them, the rest are taken in descending score order until the per-window
// byte budget is reached.
MigrationPlan classify_and_plan(const EngineReport& rep, const Placement& placement,
                                const TieringPolicy& policy);

// Applies the plan (evicting the coldest near entries under capacity
// pressure) and returns the migration time in seconds. Throws
// std::logic_error if a plan range is already near-resident.
double apply_plan(const MigrationPlan& plan, Placement* placement, const TierModel& tier);

// Accesses per second given where the batch's accesses land:
// 1e9 / mean(latency_ns). Returns 0 for an empty batch.
double throughput_proxy(const AccessBatch& batch, const Placement& placement,
                        const TierModel& tier);

}  // namespace telemsim
