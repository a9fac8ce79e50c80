#pragma once

#include <vector>

#include "telemsim/interval_set.hpp"
#include "telemsim/rng.hpp"
#include "telemsim/units.hpp"

namespace telemsim {

// Telemetry intervals: bits are sampled every sampling_interval, counts
// aggregate over profile_window, mappings are rescanned every
// region_update_interval.
struct IntervalConfig {
  i64 sampling_interval_ms = 5;
  i64 profile_window_ms = 200;
  i64 region_update_interval_ms = 1000;

  u32 samples_per_window() const {
    return static_cast<u32>(profile_window_ms / sampling_interval_ms);
  }
  void validate() const;
};

struct RegionConfig {
  u32 min_regions = 10;
  u32 max_regions = 1000;
  // Counts are "close" for merging if they differ by at most this fraction
  // of samples-per-window. Keep this below the count a barely-hot region
  // produces, or merging folds faint hot tails into cold neighbors faster
  // than splitting can isolate them.
  double merge_threshold_frac = 0.05;
  // Warm-region resolution: a region whose count sits in the ambiguous band
  // (hit, but below hot) is kept out of merging and fans out hard on the
  // next split. Sound when one sample vouches for a whole subtree, as in
  // page-table-tree profiling; off by default to keep plain region sampling
  // at its stock behavior, where a warm count means a single hot page and
  // the kernel folds it away.
  bool resolve_warm = false;
  // score = 100 * (count_weight * count/spw + age_weight * min(age,cap)/cap)
  double score_count_weight = 0.7;
  double score_age_weight = 0.3;
  u32 score_age_cap = 10;
};

struct Region {
  ByteRange range;
  u64 id = 0;
  u32 access_count = 0;  // samples seen accessed in the current window
  u32 last_count = 0;    // previous window, for pattern-change detection
  u32 age = 0;           // windows since creation or last pattern change
};

u32 region_score(const Region& r, u32 samples_per_window, const RegionConfig& cfg);

// Ordered, disjoint regions covering exactly the mapped ranges.
class RegionSet {
 public:
  RegionSet() = default;

  // Equal-size decomposition: initial_count regions distributed over the
  // contiguous mapped ranges proportionally to their length (at least one
  // per range), page-granular, remainder bytes on the last region of a range.
  static RegionSet init(const RangeSet& mapped, u32 initial_count);

  std::vector<Region>& regions() { return regions_; }
  const std::vector<Region>& regions() const { return regions_; }

  void record_window_sample(size_t region_idx, bool accessed);

  // End-of-window bookkeeping, in order: (1) merge adjacent regions with
  // close counts (size-weighted counts, age = min, merged size capped at
  // mapped_total/min_regions so the population can never fall below the
  // minimum), (2) if fewer than max_regions/2 remain, split every region
  // into random-sized subregions, each cut at [10%, 90%] of the remainder,
  // (3) update ages (reset on pattern change, else increment) and zero the
  // counts.
  //
  // Splitting is normally two-way, with two escalations while the
  // population is under a third of the allowance: (a) a region whose count
  // sits in the ambiguous warm band (hit, but below hot) fans out hard so
  // the sub-range feeding those samples gets isolated while the signal is
  // live, and (b) a region whose pattern has been stable for several
  // windows (growing age) fans out progressively, since repeated binary
  // cuts of a re-merged blob cannot isolate structure sitting mid-region.
  void end_window_maintenance(u32 samples_per_window, const RegionConfig& cfg, Rng& rng);

  // Tracks mapping changes: regions over unmapped space are dropped or
  // trimmed, each newly mapped contiguous area gets one fresh region.
  void refresh_mappings(const RangeSet& mapped);

  u64 covered_bytes() const;

 private:
  void renumber_from(const RangeSet& mapped);

  std::vector<Region> regions_;
  u64 mapped_total_ = 0;
  u64 next_id_ = 0;
};

}  // namespace telemsim
