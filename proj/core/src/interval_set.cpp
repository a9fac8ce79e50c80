#include "telemsim/interval_set.hpp"

#include <algorithm>

namespace telemsim {

RangeSet::RangeSet(std::vector<ByteRange> ranges) {
  for (const auto& r : ranges) add(r);
}

void RangeSet::add(ByteRange r) {
  if (r.empty()) return;
  // First range whose end could touch r (coalesce on adjacency).
  auto it = std::lower_bound(ranges_.begin(), ranges_.end(), r,
                             [](const ByteRange& a, const ByteRange& b) { return a.end < b.start; });
  ByteRange merged = r;
  auto first = it;
  while (it != ranges_.end() && it->start <= merged.end) {
    merged.start = std::min(merged.start, it->start);
    merged.end = std::max(merged.end, it->end);
    ++it;
  }
  it = ranges_.erase(first, it);
  ranges_.insert(it, merged);
}

bool RangeSet::add_disjoint(ByteRange r) {
  if (r.empty()) return false;
  if (overlap_bytes(r) > 0) return false;
  add(r);
  return true;
}

void RangeSet::subtract(ByteRange r) {
  if (r.empty() || ranges_.empty()) return;
  std::vector<ByteRange> out;
  out.reserve(ranges_.size() + 1);
  for (const auto& cur : ranges_) {
    if (!cur.overlaps(r)) {
      out.push_back(cur);
      continue;
    }
    if (cur.start < r.start) out.push_back({cur.start, r.start});
    if (cur.end > r.end) out.push_back({r.end, cur.end});
  }
  ranges_ = std::move(out);
}

bool RangeSet::contains(u64 addr) const {
  auto it = std::upper_bound(ranges_.begin(), ranges_.end(), addr,
                             [](u64 a, const ByteRange& b) { return a < b.end; });
  return it != ranges_.end() && it->contains(addr);
}

bool RangeSet::contains(const ByteRange& r) const {
  if (r.empty()) return true;
  auto it = std::upper_bound(ranges_.begin(), ranges_.end(), r.start,
                             [](u64 a, const ByteRange& b) { return a < b.end; });
  return it != ranges_.end() && it->contains(r);
}

u64 RangeSet::overlap_bytes(const ByteRange& r) const {
  return telemsim::overlap_bytes(ranges_, r);
}

u64 RangeSet::overlap_bytes(const RangeSet& other) const {
  u64 total = 0;
  for (const auto& r : other.ranges_) total += overlap_bytes(r);
  return total;
}

u64 RangeSet::total_bytes() const {
  u64 total = 0;
  for (const auto& r : ranges_) total += r.len();
  return total;
}

u64 overlap_bytes(const std::vector<ByteRange>& sorted_disjoint, const ByteRange& r) {
  if (r.empty()) return 0;
  auto it = std::upper_bound(sorted_disjoint.begin(), sorted_disjoint.end(), r.start,
                             [](u64 a, const ByteRange& b) { return a < b.end; });
  u64 total = 0;
  for (; it != sorted_disjoint.end() && it->start < r.end; ++it) total += overlap_len(*it, r);
  return total;
}

}  // namespace telemsim
