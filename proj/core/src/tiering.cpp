#include "telemsim/tiering.hpp"

#include <algorithm>
#include <stdexcept>

namespace telemsim {

void TierModel::validate() const {
  if (near_latency_ns <= 0 || far_latency_ns <= near_latency_ns)
    throw std::invalid_argument("tier model: need far_latency > near_latency > 0");
  if (near_capacity_bytes == 0 || migration_bandwidth_bytes_per_s <= 0)
    throw std::invalid_argument("tier model: capacity and bandwidth must be positive");
}

u64 Placement::admit(ByteRange r, double score, u64 capacity_bytes) {
  if (r.empty()) return 0;
  auto pos = std::lower_bound(entries_.begin(), entries_.end(), r.start,
                              [](const NearEntry& e, u64 s) { return e.range.start < s; });
  entries_.insert(pos, {r, score});
  near_set_.add(r);

  u64 evicted = 0;
  while (near_set_.total_bytes() > capacity_bytes) {
    // Coldest first, ties by ascending address. The entry just admitted is
    // not a candidate, so admitting more than fits trims it instead.
    size_t victim = entries_.size();
    for (size_t i = 0; i < entries_.size(); i++) {
      if (entries_[i].range == r) continue;
      if (victim == entries_.size() || entries_[i].score < entries_[victim].score ||
          (entries_[i].score == entries_[victim].score &&
           entries_[i].range.start < entries_[victim].range.start))
        victim = i;
    }
    if (victim == entries_.size()) {
      u64 excess = near_set_.total_bytes() - capacity_bytes;
      for (auto& e : entries_) {
        if (e.range == r) {
          near_set_.subtract({e.range.end - excess, e.range.end});
          e.range.end -= excess;
          evicted += excess;
          break;
        }
      }
      break;
    }
    evicted += entries_[victim].range.len();
    near_set_.subtract(entries_[victim].range);
    entries_.erase(entries_.begin() + static_cast<long>(victim));
  }
  return evicted;
}

void Placement::update_scores(const EngineReport& rep) {
  for (auto& e : entries_) {
    double best = -1;
    for (const auto& row : rep.regions) {
      if (!row.range.overlaps(e.range)) continue;
      best = std::max(best, static_cast<double>(row.score));
    }
    if (best >= 0) e.score = best;
  }
}

MigrationPlan classify_and_plan(const EngineReport& rep, const Placement& placement,
                                const TieringPolicy& policy) {
  std::vector<const RegionRow*> hot;
  for (const auto& row : rep.regions) {
    if (row.access_count <= policy.hot_min_count) continue;
    if (row.range.len() >= policy.skip_region_bytes) continue;
    hot.push_back(&row);
  }
  std::sort(hot.begin(), hot.end(), [](const RegionRow* a, const RegionRow* b) {
    if (a->score != b->score) return a->score > b->score;
    return a->range.start < b->range.start;
  });

  MigrationPlan plan;
  u64 planned = 0;
  const auto& near = placement.near_set();
  for (const RegionRow* row : hot) {
    // Only the far-resident pieces move.
    RangeSet far_part;
    far_part.add(row->range);
    for (const auto& nr : near.ranges()) far_part.subtract(nr);
    u64 bytes = far_part.total_bytes();
    if (bytes == 0) continue;
    if (planned + bytes > policy.budget_bytes_per_window) break;  // budget reached
    for (const auto& piece : far_part.ranges())
      plan.items.push_back({piece, static_cast<double>(row->score)});
    planned += bytes;
  }
  return plan;
}

double apply_plan(const MigrationPlan& plan, Placement* placement, const TierModel& tier) {
  u64 moved = 0;
  for (const auto& item : plan.items) {
    if (placement->near_set().overlap_bytes(item.range) != 0)
      throw std::logic_error("apply_plan: range is already near-resident");
    placement->admit(item.range, item.score, tier.near_capacity_bytes);
    moved += item.range.len();
  }
  return static_cast<double>(moved) / tier.migration_bandwidth_bytes_per_s;
}

double throughput_proxy(const AccessBatch& batch, const Placement& placement,
                        const TierModel& tier) {
  if (batch.addrs.empty()) return 0.0;
  u64 near_hits = 0;
  for (u64 a : batch.addrs)
    if (placement.is_near(a)) near_hits++;
  double total_ns = static_cast<double>(near_hits) * tier.near_latency_ns +
                    static_cast<double>(batch.addrs.size() - near_hits) * tier.far_latency_ns;
  double mean_ns = total_ns / static_cast<double>(batch.addrs.size());
  return 1e9 / mean_ns;
}

}  // namespace telemsim
