#include "telemsim/region.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace telemsim {

void IntervalConfig::validate() const {
  if (sampling_interval_ms <= 0 || profile_window_ms <= 0 || region_update_interval_ms <= 0)
    throw std::invalid_argument("intervals must be positive");
  if (profile_window_ms % sampling_interval_ms != 0)
    throw std::invalid_argument("profile_window_ms must be a multiple of sampling_interval_ms");
}

u32 region_score(const Region& r, u32 samples_per_window, const RegionConfig& cfg) {
  double count_part =
      std::min<double>(r.access_count, samples_per_window) / static_cast<double>(samples_per_window);
  double age_part = std::min<double>(r.age, cfg.score_age_cap) / static_cast<double>(cfg.score_age_cap);
  double s = 100.0 * (cfg.score_count_weight * count_part + cfg.score_age_weight * age_part);
  return static_cast<u32>(std::lround(s));
}

RegionSet RegionSet::init(const RangeSet& mapped, u32 initial_count) {
  if (mapped.empty()) throw std::invalid_argument("init_regions: empty mapping");
  if (initial_count < 1) throw std::invalid_argument("init_regions: initial_count must be >= 1");

  RegionSet set;
  set.mapped_total_ = mapped.total_bytes();

  // Proportional shares with largest-remainder rounding, at least 1 each.
  const auto& ranges = mapped.ranges();
  size_t n = ranges.size();
  std::vector<u64> share(n, 1);
  if (initial_count > n) {
    u64 remaining = initial_count;
    std::vector<double> frac(n);
    u64 assigned = 0;
    for (size_t i = 0; i < n; i++) {
      double exact = static_cast<double>(initial_count) * ranges[i].len() / set.mapped_total_;
      share[i] = std::max<u64>(1, static_cast<u64>(exact));
      frac[i] = exact - static_cast<double>(share[i]);
      assigned += share[i];
    }
    while (assigned < remaining) {
      size_t best = 0;
      for (size_t i = 1; i < n; i++)
        if (frac[i] > frac[best]) best = i;
      share[best]++;
      frac[best] -= 1.0;
      assigned++;
    }
  }

  for (size_t i = 0; i < n; i++) {
    u64 pages = ranges[i].len() / kPageBytes;
    u64 k = std::min<u64>(share[i], std::max<u64>(1, pages));
    u64 chunk_pages = std::max<u64>(1, pages / k);
    u64 start = ranges[i].start;
    for (u64 j = 0; j < k; j++) {
      u64 end = (j + 1 == k) ? ranges[i].end : start + chunk_pages * kPageBytes;
      set.regions_.push_back({{start, end}, set.next_id_++, 0, 0, 0});
      start = end;
    }
  }
  return set;
}

void RegionSet::record_window_sample(size_t region_idx, bool accessed) {
  if (accessed) regions_[region_idx].access_count++;
}

void RegionSet::end_window_maintenance(u32 samples_per_window, const RegionConfig& cfg, Rng& rng) {
  u32 threshold = static_cast<u32>(cfg.merge_threshold_frac * samples_per_window);
  u64 size_cap = std::max<u64>(mapped_total_ / std::max<u32>(1, cfg.min_regions), kPageBytes);
  u32 warm_max = std::max<u32>(1, samples_per_window / 8);
  auto warm = [warm_max, &cfg](const Region& r) {
    return cfg.resolve_warm && r.access_count > 0 && r.access_count <= warm_max;
  };

  // Merge: single left-to-right pass over adjacent regions. Warm regions
  // are kept apart: folding a faint signal into a cold neighbor would
  // erase the evidence the next split needs.
  if (!regions_.empty()) {
    std::vector<Region> merged;
    merged.reserve(regions_.size());
    merged.push_back(regions_[0]);
    for (size_t i = 1; i < regions_.size(); i++) {
      Region& cur = merged.back();
      const Region& next = regions_[i];
      u32 diff = cur.access_count > next.access_count ? cur.access_count - next.access_count
                                                      : next.access_count - cur.access_count;
      if (cur.range.end == next.range.start && diff <= threshold && !warm(cur) && !warm(next) &&
          cur.range.len() + next.range.len() <= size_cap) {
        u64 total = cur.range.len() + next.range.len();
        cur.access_count = static_cast<u32>(
            (static_cast<u64>(cur.access_count) * cur.range.len() +
             static_cast<u64>(next.access_count) * next.range.len() + total / 2) /
            total);
        cur.last_count = static_cast<u32>(
            (static_cast<u64>(cur.last_count) * cur.range.len() +
             static_cast<u64>(next.last_count) * next.range.len() + total / 2) /
            total);
        cur.age = std::min(cur.age, next.age);
        cur.range.end = next.range.end;
      } else {
        merged.push_back(next);
      }
    }
    regions_ = std::move(merged);
  }

  // Split: only while the population is under half the allowance.
  if (regions_.size() < cfg.max_regions / 2) {
    bool allow_fan = regions_.size() < cfg.max_regions / 3;
    u64 fan_cap = std::max<u64>(2, cfg.max_regions / std::max<size_t>(regions_.size(), 1));
    std::vector<Region> split;
    split.reserve(regions_.size() * 2);
    for (const Region& r : regions_) {
      u64 pieces = 2;
      // Warm band: some samples hit but too few to call the region hot.
      // Such a region has sub-structure worth resolving immediately.
      if (allow_fan && warm(r))
        pieces = std::min<u64>(8, fan_cap);
      else if (allow_fan && r.age >= 2)
        pieces = std::min<u64>({8, 1 + r.age, fan_cap});
      Region rest = r;
      for (u64 cut = 1; cut < pieces; cut++) {
        u64 pages = rest.range.len() / kPageBytes;
        if (pages < 2) break;
        double frac = 0.10 + 0.80 * rng.unit();
        u64 off_pages = std::clamp<u64>(static_cast<u64>(static_cast<double>(pages) * frac), 1,
                                        pages - 1);
        Region left = rest;
        left.range.end = rest.range.start + off_pages * kPageBytes;
        split.push_back(left);
        rest.range.start = left.range.end;
        rest.id = next_id_++;
      }
      split.push_back(rest);
    }
    regions_ = std::move(split);
  }

  // Age and reset. A pattern change (count far from the last window's)
  // restarts the region's age.
  for (Region& r : regions_) {
    u32 diff = r.access_count > r.last_count ? r.access_count - r.last_count
                                             : r.last_count - r.access_count;
    if (diff > threshold)
      r.age = 0;
    else
      r.age++;
    r.last_count = r.access_count;
    r.access_count = 0;
  }
}

void RegionSet::refresh_mappings(const RangeSet& mapped) {
  std::vector<Region> kept;
  kept.reserve(regions_.size());
  RangeSet covered;
  for (const Region& r : regions_) {
    if (mapped.contains(r.range)) {
      kept.push_back(r);
      covered.add(r.range);
      continue;
    }
    // Trim to the mapped parts; a hole may split a region into pieces.
    for (const ByteRange& m : mapped.ranges()) {
      if (!m.overlaps(r.range)) continue;
      Region piece = r;
      piece.range = {std::max(m.start, r.range.start), std::min(m.end, r.range.end)};
      if (piece.range.empty()) continue;
      if (piece.range != r.range) piece.id = next_id_++;
      kept.push_back(piece);
      covered.add(piece.range);
    }
  }
  // Fresh region per newly mapped contiguous area.
  RangeSet fresh = mapped;
  for (const auto& c : covered.ranges()) fresh.subtract(c);
  for (const auto& nr : fresh.ranges()) kept.push_back({nr, next_id_++, 0, 0, 0});

  std::sort(kept.begin(), kept.end(),
            [](const Region& a, const Region& b) { return a.range.start < b.range.start; });
  regions_ = std::move(kept);
  mapped_total_ = mapped.total_bytes();
}

u64 RegionSet::covered_bytes() const {
  u64 total = 0;
  for (const auto& r : regions_) total += r.range.len();
  return total;
}

}  // namespace telemsim
