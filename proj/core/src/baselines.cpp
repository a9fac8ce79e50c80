#include "telemsim/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace telemsim {

std::vector<ByteRange> hot_ranges_only(const EngineReport& r) {
  std::vector<ByteRange> out;
  out.reserve(r.hot_ranges.size());
  for (const auto& sr : r.hot_ranges) out.push_back(sr.range);
  return out;
}

// ---------------------------------------------------------------------------
// Linear scanning

ScanThrottle ScanThrottle::preset(ScanMode m) {
  ScanThrottle t;
  t.mode = m;
  switch (m) {
    case ScanMode::kAggressive: t.sleep_ms_per_chunk = 0; break;
    case ScanMode::kModerate: t.sleep_ms_per_chunk = 10; break;
    case ScanMode::kConservative: t.sleep_ms_per_chunk = 100; break;
  }
  return t;
}

ScanModelResult linear_scan_model(u64 heap_bytes, const ScanThrottle& throttle) {
  double active_s = static_cast<double>(heap_bytes) / throttle.scan_rate_bytes_per_s;
  u64 chunks = (heap_bytes + throttle.chunk_bytes - 1) / throttle.chunk_bytes;
  double sleep_s = static_cast<double>(chunks) * throttle.sleep_ms_per_chunk / 1000.0;
  double total_s = active_s + sleep_s;
  return {total_s, throttle.duty_factor * active_s / total_s};
}

LinearScanEngine::LinearScanEngine(std::string tag, const Scenario& scenario,
                                   const IntervalConfig& intervals, const ScanThrottle& throttle)
    : tag_(std::move(tag)), intervals_(intervals), throttle_(throttle) {
  pt_.map_range(0, scenario.heap_bytes);
}

void LinearScanEngine::observe_batch(const AccessBatch&, const LevelIndexSets& sets) {
  sets.apply_to(&pt_);
}

void LinearScanEngine::end_interval(i64) {
  advance_ms(static_cast<double>(intervals_.sampling_interval_ms));
}

void LinearScanEngine::step_bytes(u64 bytes) {
  const auto& ranges = pt_.mapped().ranges();
  ByteRange span{ranges[range_idx_].start + offset_, ranges[range_idx_].start + offset_ + bytes};
  if (pass_ == 1)
    pt_.clear_pte_range(span);
  else
    pt_.collect_set_ptes(span, &current_hot_);
  cost_.work_units += bytes / kPageBytes;
  cost_.bit_flips = pt_.bits_cleared_total();
  offset_ += bytes;
  chunk_done_ += bytes;
  if (chunk_done_ >= throttle_.chunk_bytes) {
    chunk_done_ = 0;
    sleep_debt_ms_ += throttle_.sleep_ms_per_chunk;
  }
  if (offset_ >= ranges[range_idx_].len()) advance_cursor_done_range();
}

void LinearScanEngine::advance_cursor_done_range() {
  offset_ = 0;
  range_idx_++;
  if (range_idx_ < pt_.mapped().ranges().size()) return;
  range_idx_ = 0;
  if (pass_ == 1) {
    pass_ = 2;
  } else {
    pass_ = 1;
    last_hot_ = std::move(current_hot_);
    current_hot_.clear();
    completed_double_passes_++;
  }
}

void LinearScanEngine::advance_ms(double ms) {
  if (pt_.mapped().empty()) return;
  double left = ms;
  while (left > 1e-9) {
    if (sleep_debt_ms_ > 0) {
      double used = std::min(sleep_debt_ms_, left);
      sleep_debt_ms_ -= used;
      left -= used;
      continue;
    }
    const auto& ranges = pt_.mapped().ranges();
    u64 range_left = ranges[range_idx_].len() - offset_;
    u64 chunk_left = throttle_.chunk_bytes - chunk_done_;
    u64 step = std::min(range_left, chunk_left);
    double ms_needed = static_cast<double>(step) / throttle_.scan_rate_bytes_per_s * 1000.0;
    if (ms_needed <= left) {
      step_bytes(step);
      left -= ms_needed;
    } else {
      u64 partial = static_cast<u64>(throttle_.scan_rate_bytes_per_s * left / 1000.0);
      partial &= ~(kPageBytes - 1);
      if (partial > 0) step_bytes(partial);
      break;  // leftover credit below one page is dropped
    }
  }
}

void LinearScanEngine::finish_pass() {
  int pass = pass_;
  while (pass_ == pass) {
    const auto& ranges = pt_.mapped().ranges();
    step_bytes(std::min(ranges[range_idx_].len() - offset_, throttle_.chunk_bytes - chunk_done_));
  }
  sleep_debt_ms_ = 0;
}

EngineReport LinearScanEngine::end_window(i64 t_start_ms, i64 t_end_ms) {
  EngineReport rep;
  rep.t_start_ms = t_start_ms;
  rep.t_end_ms = t_end_ms;
  for (const auto& r : last_hot_) {
    rep.hot_ranges.push_back({r, 1.0});
    rep.regions.push_back({r, 1, 0, 100});
  }
  rep.cost = cost_.delta_since(reported_);
  reported_ = cost_;
  rep.covered_bytes = rep.cost.bit_flips * kPageBytes;
  return rep;
}

// ---------------------------------------------------------------------------
// Region-based sampling

RegionSamplingEngine::RegionSamplingEngine(std::string tag, const Scenario& scenario,
                                           const IntervalConfig& intervals,
                                           const EngineTuning& tuning, u64 seed)
    : tag_(std::move(tag)),
      intervals_(intervals),
      tuning_(tuning),
      rng_(mix_seed(seed, 0x73616d706c65ull)),
      maint_rng_(mix_seed(seed, 0x6d61696e74ull)) {
  intervals_.validate();
  pt_.map_range(0, scenario.heap_bytes);
  regions_ = RegionSet::init(pt_.mapped(), tuning_.region.min_regions);
}

void RegionSamplingEngine::begin_interval(i64) {
  auto& regions = regions_.regions();
  sampled_.resize(regions.size());
  for (size_t i = 0; i < regions.size(); i++) {
    u64 addr = rng_.range(regions[i].range.start, regions[i].range.end);
    sampled_[i] = entry_covering(addr, Level::kPte);
    pt_.clear_accessed(sampled_[i]);
    covered_window_ += kPageBytes;
    cost_.work_units++;
  }
  cost_.bit_flips = pt_.bits_cleared_total();
}

void RegionSamplingEngine::observe_batch(const AccessBatch&, const LevelIndexSets& sets) {
  sets.apply_to(&pt_);
}

void RegionSamplingEngine::end_interval(i64) {
  auto& regions = regions_.regions();
  for (size_t i = 0; i < regions.size() && i < sampled_.size(); i++) {
    cost_.work_units++;
    if (pt_.test_accessed(sampled_[i])) regions_.record_window_sample(i, true);
  }
  cost_.samples_taken += sampled_.size();
}

EngineReport RegionSamplingEngine::end_window(i64 t_start_ms, i64 t_end_ms) {
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

// ---------------------------------------------------------------------------
// Hardware-event sampling

EventSamplingEngine::EventSamplingEngine(std::string tag, const Scenario& scenario,
                                         const IntervalConfig& intervals,
                                         const EngineTuning& tuning, const PmuConfig& cfg,
                                         u64 seed)
    : tag_(std::move(tag)),
      intervals_(intervals),
      tuning_(tuning),
      cfg_(cfg),
      effective_freq_hz_(cfg.sample_freq_hz),
      rng_(mix_seed(seed, 0x706d75ull)) {
  (void)scenario;
}

void EventSamplingEngine::observe_batch(const AccessBatch& batch, const LevelIndexSets&) {
  size_t n = batch.addrs.size();
  if (n == 0) return;
  double window_s = static_cast<double>(batch.t_end_ms - batch.t_start_ms) / 1000.0;
  double target = effective_freq_hz_ * window_s;
  double p = std::min(1.0, target / static_cast<double>(n));
  u64 cap = static_cast<u64>(target + 1e-9);
  if (cap == 0) return;  // below one event per batch at this frequency
  u64 taken = 0;
  u64 idx = rng_.geometric_skip(p);
  while (idx < n && taken < cap) {
    u64 block = batch.addrs[idx] >> 21;
    histogram_[block]++;
    taken++;
    u64 skip = rng_.geometric_skip(p);
    if (skip >= n) break;
    idx += 1 + skip;
  }
  window_samples_ += taken;
  cost_.samples_taken += taken;
  cost_.interrupts += taken;
  cost_.work_units += taken;
}

EngineReport EventSamplingEngine::end_window(i64 t_start_ms, i64 t_end_ms) {
  EngineReport rep;
  rep.t_start_ms = t_start_ms;
  rep.t_end_ms = t_end_ms;
  std::vector<std::pair<u64, u32>> blocks(histogram_.begin(), histogram_.end());
  std::sort(blocks.begin(), blocks.end());
  u64 gran = cfg_.aggregation_granularity;
  for (const auto& [block, hits] : blocks) {
    ByteRange r{block * gran, (block + 1) * gran};
    rep.regions.push_back({r, hits, 0, hits});
    if (hits >= tuning_.pmu_block_min_hits) {
      if (!rep.hot_ranges.empty() && rep.hot_ranges.back().range.end == r.start &&
          rep.hot_ranges.back().score == hits) {
        rep.hot_ranges.back().range.end = r.end;
      } else {
        rep.hot_ranges.push_back({r, static_cast<double>(hits)});
      }
    }
  }
  rep.cost = cost_.delta_since(reported_);
  reported_ = cost_;
  rep.covered_bytes = rep.cost.samples_taken * gran;

  double window_s = static_cast<double>(t_end_ms - t_start_ms) / 1000.0;
  if (window_s > 0 && static_cast<double>(window_samples_) / window_s > cfg_.throttle_ceiling_per_s)
    effective_freq_hz_ /= 2;  // kernel-style interrupt throttling
  histogram_.clear();
  window_samples_ = 0;
  return rep;
}

}  // namespace telemsim
