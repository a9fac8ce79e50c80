#include "telemsim/telescope.hpp"

#include <algorithm>

namespace telemsim {

std::pair<Level, std::vector<EntryRef>> candidate_entries_bounded(ByteRange region) {
  for (int l = kNumLevels - 1; l >= 0; l--) {
    Level level = static_cast<Level>(l);
    if (SparsePageTable::entries_within_count(region, level) > 0)
      return {level, SparsePageTable::entries_within(region, level)};
  }
  // Sub-page sliver: profile the PTE overlapping the region start.
  return {Level::kPte, {entry_covering(region.start, Level::kPte)}};
}

std::pair<Level, std::vector<EntryRef>> candidate_entries_flex(
    ByteRange region, const std::array<double, kNumLevels>& thresholds) {
  for (int l = kNumLevels - 1; l >= 0; l--) {
    Level level = static_cast<Level>(l);
    u64 cov = level_coverage(level);
    u64 limit = static_cast<u64>(thresholds[l] * static_cast<double>(cov));
    std::vector<EntryRef> qualifying;
    u64 first = region.start >> level_shift(level);
    u64 last = (region.end - 1) >> level_shift(level);
    for (u64 i = first; i <= last; i++) {
      EntryRef e{level, i};
      u64 overshoot = cov - overlap_len(e.va_range(), region);
      if (overshoot <= limit) qualifying.push_back(e);
    }
    if (!qualifying.empty()) return {level, std::move(qualifying)};
  }
  return candidate_entries_bounded(region);
}

ProfileChoice profile_entry_at(ByteRange region, const VariantConfig& cfg, u64 addr) {
  for (int l = kNumLevels - 1; l >= 0; l--) {
    Level level = static_cast<Level>(l);
    EntryRef e = entry_covering(addr, level);
    u64 cov = level_coverage(level);
    u64 overshoot = cov - overlap_len(e.va_range(), region);
    if (overshoot <= static_cast<u64>(cfg.threshold(level) * static_cast<double>(cov)))
      return {e, overshoot};
  }
  EntryRef e = entry_covering(region.start, Level::kPte);
  return {e, level_coverage(Level::kPte) - overlap_len(e.va_range(), region)};
}

ProfileChoice pick_profile_entry(ByteRange region, const VariantConfig& cfg, Rng& rng) {
  return profile_entry_at(region, cfg, region.start + rng.below(region.len()));
}

TreeProfilingEngine::TreeProfilingEngine(std::string tag, const Scenario& scenario,
                                         const IntervalConfig& intervals,
                                         const EngineTuning& tuning, const VariantConfig& variant,
                                         u64 seed)
    : tag_(std::move(tag)),
      intervals_(intervals),
      tuning_(tuning),
      variant_(variant),
      seed_(seed),
      maint_rng_(mix_seed(seed, 0x6d61696e74ull)) {
  intervals_.validate();
  pt_.map_range(0, scenario.heap_bytes);
  regions_ = RegionSet::init(pt_.mapped(), tuning_.region.min_regions);
}

void TreeProfilingEngine::begin_interval(i64) {
  auto& regions = regions_.regions();
  chosen_.resize(regions.size());
  for (size_t i = 0; i < regions.size(); i++) {
    Rng pick_rng(mix_seed(seed_, regions[i].id, interval_index_));
    ProfileChoice choice = pick_profile_entry(regions[i].range, variant_, pick_rng);
    chosen_[i] = choice.entry;
    pt_.clear_accessed(choice.entry);
    covered_window_ += level_coverage(choice.entry.level);
    cost_.work_units++;
  }
  cost_.bit_flips = pt_.bits_cleared_total();
}

void TreeProfilingEngine::observe_batch(const AccessBatch&, const LevelIndexSets& sets) {
  sets.apply_to(&pt_);
}

void TreeProfilingEngine::end_interval(i64) {
  auto& regions = regions_.regions();
  for (size_t i = 0; i < regions.size() && i < chosen_.size(); i++) {
    cost_.work_units++;
    if (pt_.test_accessed(chosen_[i])) regions_.record_window_sample(i, true);
  }
  cost_.samples_taken += chosen_.size();
  interval_index_++;
}

EngineReport TreeProfilingEngine::end_window(i64 t_start_ms, i64 t_end_ms) {
  EngineReport rep;
  rep.t_start_ms = t_start_ms;
  rep.t_end_ms = t_end_ms;
  u32 spw = intervals_.samples_per_window();
  for (const auto& r : regions_.regions()) {
    u32 score = region_score(r, spw, tuning_.region);
    rep.regions.push_back({r.range, r.access_count, r.age, score});
    if (r.access_count > tuning_.hot_min_count)
      rep.hot_ranges.push_back({r.range, static_cast<double>(score)});
  }
  rep.cost = cost_.delta_since(reported_);
  reported_ = cost_;
  rep.covered_bytes = covered_window_;
  covered_window_ = 0;
  regions_.end_window_maintenance(spw, tuning_.region, maint_rng_);
  if (next_refresh_ms_ < 0) next_refresh_ms_ = t_end_ms + intervals_.region_update_interval_ms;
  if (t_end_ms >= next_refresh_ms_) {
    regions_.refresh_mappings(pt_.mapped());
    next_refresh_ms_ += intervals_.region_update_interval_ms;
  }
  return rep;
}

}  // namespace telemsim
