#include "telemsim/metrics.hpp"

#include <algorithm>
#include <cstdio>

namespace telemsim {

PrScore precision_recall(const std::vector<ByteRange>& reported, const RangeSet& truth) {
  PrScore s;
  u64 reported_total = 0;
  u64 hit = 0;
  for (const auto& r : reported) {
    reported_total += r.len();
    hit += truth.overlap_bytes(r);
  }
  u64 truth_total = truth.total_bytes();
  s.precision = reported_total > 0 ? static_cast<double>(hit) / static_cast<double>(reported_total) : 0.0;
  if (truth_total == 0) {
    s.recall_defined = false;
    s.recall = 0.0;
  } else {
    s.recall = static_cast<double>(hit) / static_cast<double>(truth_total);
  }
  return s;
}

HeatmapGrid::HeatmapGrid(i64 t_total_ms, u64 addr_span, size_t time_buckets, size_t addr_buckets)
    : t_total_ms_(t_total_ms),
      addr_span_(addr_span),
      time_buckets_(time_buckets),
      addr_buckets_(addr_buckets),
      cells_(time_buckets * addr_buckets, 0.0) {}

void HeatmapGrid::accumulate(const EngineReport& rep) {
  i64 mid = (rep.t_start_ms + rep.t_end_ms) / 2;
  if (mid < 0 || mid >= t_total_ms_) return;
  size_t tb = static_cast<size_t>(static_cast<double>(mid) / t_total_ms_ * time_buckets_);
  if (tb >= time_buckets_) tb = time_buckets_ - 1;
  double bucket_span = static_cast<double>(addr_span_) / static_cast<double>(addr_buckets_);
  for (const auto& sr : rep.hot_ranges) {
    if (sr.range.empty() || sr.range.start >= addr_span_) continue;
    size_t b0 = static_cast<size_t>(static_cast<double>(sr.range.start) / bucket_span);
    size_t b1 = static_cast<size_t>(static_cast<double>(sr.range.end - 1) / bucket_span);
    b1 = std::min(b1, addr_buckets_ - 1);
    for (size_t b = b0; b <= b1; b++) {
      ByteRange cell_range{static_cast<u64>(static_cast<double>(b) * bucket_span),
                           static_cast<u64>(static_cast<double>(b + 1) * bucket_span)};
      if (b + 1 == addr_buckets_) cell_range.end = addr_span_;
      double w = static_cast<double>(overlap_len(cell_range, sr.range)) /
                 static_cast<double>(sr.range.len());
      cells_[tb * addr_buckets_ + b] += sr.score * w;
    }
  }
}

double HeatmapGrid::cell(size_t time_bucket, size_t addr_bucket) const {
  return cells_[time_bucket * addr_buckets_ + addr_bucket];
}

double HeatmapGrid::total_mass() const {
  double m = 0;
  for (double c : cells_) m += c;
  return m;
}

std::string HeatmapGrid::to_csv() const {
  std::string out = "t_ms,offset_start,score\n";
  char line[96];
  for (size_t t = 0; t < time_buckets_; t++) {
    i64 t_ms = static_cast<i64>(static_cast<double>(t) * t_total_ms_ / time_buckets_);
    for (size_t b = 0; b < addr_buckets_; b++) {
      double v = cells_[t * addr_buckets_ + b];
      if (v <= 0) continue;
      u64 off = static_cast<u64>(static_cast<double>(b) * addr_span_ / addr_buckets_);
      std::snprintf(line, sizeof line, "%lld,%llu,%.6g\n", (long long)t_ms,
                    (unsigned long long)off, v);
      out += line;
    }
  }
  return out;
}

std::vector<PhaseSummaryRow> summarize(const Scenario& scenario,
                                       const std::vector<EngineSeries>& series,
                                       const SummaryConfig& cfg) {
  std::vector<PhaseSummaryRow> rows;
  int phases = static_cast<int>(scenario.phases.size());
  for (const auto& es : series) {
    i64 window_ms = es.windows.empty()
                        ? 0
                        : es.windows.front().t_end_ms - es.windows.front().t_start_ms;
    for (int p = 0; p < phases; p++) {
      PhaseSummaryRow row;
      row.engine = es.engine;
      row.phase = p;
      i64 phase_start = scenario.phase_start_ms(p);
      i64 exclude_until = phase_start + cfg.exclusion_windows * window_ms;
      double prec_sum = 0, rec_sum = 0;
      u64 prec_n = 0, rec_n = 0;
      for (const auto& w : es.windows) {
        if (scenario.phase_index_at(w.t_start_ms) != p) continue;
        row.bit_flips += w.cost.bit_flips;
        row.work_units += w.cost.work_units;
        double win_s = static_cast<double>(w.t_end_ms - w.t_start_ms) / 1000.0;
        if (win_s > 0) {
          double util = static_cast<double>(w.cost.work_units) * cfg.work_unit_ns / 1e9 / win_s;
          row.peak_utilization = std::max(row.peak_utilization, util);
        }
        if (w.t_start_ms < exclude_until) continue;
        prec_sum += w.pr.precision;
        prec_n++;
        if (w.pr.recall_defined) {
          rec_sum += w.pr.recall;
          rec_n++;
        }
      }
      row.mean_precision = prec_n ? prec_sum / static_cast<double>(prec_n) : 0.0;
      row.mean_recall = rec_n ? rec_sum / static_cast<double>(rec_n) : 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace telemsim
