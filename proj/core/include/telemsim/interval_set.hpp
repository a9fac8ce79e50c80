#pragma once

#include <vector>

#include "telemsim/units.hpp"

namespace telemsim {

// Half-open byte range [start, end).
struct ByteRange {
  u64 start = 0;
  u64 end = 0;

  u64 len() const { return end - start; }
  bool empty() const { return end <= start; }
  bool contains(u64 addr) const { return addr >= start && addr < end; }
  bool contains(const ByteRange& o) const { return o.start >= start && o.end <= end; }
  bool overlaps(const ByteRange& o) const { return start < o.end && o.start < end; }

  friend bool operator==(const ByteRange&, const ByteRange&) = default;
};

inline u64 overlap_len(const ByteRange& a, const ByteRange& b) {
  u64 lo = a.start > b.start ? a.start : b.start;
  u64 hi = a.end < b.end ? a.end : b.end;
  return hi > lo ? hi - lo : 0;
}

// Ordered set of disjoint, non-adjacent byte ranges. Adding coalesces;
// this is the workhorse for mapped-range bookkeeping, truth sets, tier
// placement and precision/recall overlap arithmetic.
class RangeSet {
 public:
  RangeSet() = default;
  explicit RangeSet(std::vector<ByteRange> ranges);

  // Union with [start,end); adjacent and overlapping pieces coalesce.
  void add(ByteRange r);
  // Like add, but refuses overlap with existing content (adjacency is fine).
  // Returns false if the range overlaps.
  bool add_disjoint(ByteRange r);
  void subtract(ByteRange r);

  bool contains(u64 addr) const;
  bool contains(const ByteRange& r) const;
  u64 overlap_bytes(const ByteRange& r) const;
  u64 overlap_bytes(const RangeSet& other) const;

  u64 total_bytes() const;
  bool empty() const { return ranges_.empty(); }
  size_t size() const { return ranges_.size(); }
  const std::vector<ByteRange>& ranges() const { return ranges_; }

  friend bool operator==(const RangeSet&, const RangeSet&) = default;

 private:
  std::vector<ByteRange> ranges_;  // sorted by start, disjoint, non-adjacent
};

u64 overlap_bytes(const std::vector<ByteRange>& sorted_disjoint, const ByteRange& r);

}  // namespace telemsim
