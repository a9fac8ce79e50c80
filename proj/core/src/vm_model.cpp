#include "telemsim/vm_model.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <stdexcept>

namespace telemsim {

BitBlockStore::Block& BitBlockStore::find_or_create(u64 node) {
  size_t slot = probe(node);
  if (keys_[slot] == node) return pool_[vals_[slot]];
  if ((pool_.size() + 1) * 10 >= keys_.size() * 7) {
    rehash(keys_.size() * 2);
    slot = probe(node);
  }
  keys_[slot] = node;
  vals_[slot] = static_cast<u32>(pool_.size());
  pool_.emplace_back(Block{});
  return pool_.back();
}

void BitBlockStore::rehash(size_t buckets) {
  std::vector<u64> old_keys = std::move(keys_);
  std::vector<u32> old_vals = std::move(vals_);
  keys_.assign(buckets, kEmpty);
  vals_.assign(buckets, 0);
  mask_ = buckets - 1;
  for (size_t i = 0; i < old_keys.size(); i++) {
    if (old_keys[i] == kEmpty) continue;
    size_t slot = (old_keys[i] * 0x9e3779b97f4a7c15ull) & mask_;
    while (keys_[slot] != kEmpty) slot = (slot + 1) & mask_;
    keys_[slot] = old_keys[i];
    vals_[slot] = old_vals[i];
  }
}

void SparsePageTable::map_range(u64 start, u64 len) {
  if (len == 0) throw std::invalid_argument("map_range: len must be > 0");
  if (start >= kVaLimit || len > kVaLimit - start)
    throw std::invalid_argument("map_range: range exceeds the 48-bit address space");
  if (!mapped_.add_disjoint({start, start + len}))
    throw std::invalid_argument("map_range: overlaps an existing mapping");
}

void SparsePageTable::unmap_range(u64 start, u64 len) {
  mapped_.subtract({start, start + len});
}

void SparsePageTable::set_bit(Level l, u64 entry_index) {
  auto& block = store(l).find_or_create(entry_index >> 9);
  u64& word = block[(entry_index >> 6) & 7];
  u64 mask = 1ull << (entry_index & 63);
  if (!(word & mask)) {
    word |= mask;
    bits_set_total_++;
    bits_live_[static_cast<int>(l)]++;
  }
}

void SparsePageTable::record_access(u64 addr) {
  if (!mapped_.contains(addr))
    throw std::domain_error("record_access: fault, address not mapped");
  for (int l = 0; l < kNumLevels; l++)
    set_bit(static_cast<Level>(l), addr >> level_shift(static_cast<Level>(l)));
}

void SparsePageTable::set_entries(Level l, std::span<const u64> sorted_unique_indices) {
  BitBlockStore& st = store(l);
  u64 cached_node = ~0ull;
  BitBlockStore::Block* block = nullptr;
  u64 live = 0;
  for (u64 idx : sorted_unique_indices) {
    u64 node = idx >> 9;
    if (node != cached_node) {
      block = &st.find_or_create(node);
      cached_node = node;
    }
    u64& word = (*block)[(idx >> 6) & 7];
    u64 mask = 1ull << (idx & 63);
    if (!(word & mask)) {
      word |= mask;
      live++;
    }
  }
  bits_set_total_ += live;
  bits_live_[static_cast<int>(l)] += live;
}

void SparsePageTable::require_inside_mapping(const EntryRef& e, const char* op) const {
  if (mapped_.overlap_bytes(e.va_range()) == 0)
    throw std::invalid_argument(std::string(op) + ": entry outside all mapped ranges");
}

bool SparsePageTable::clear_accessed(const EntryRef& e) {
  require_inside_mapping(e, "clear_accessed");
  bits_cleared_total_++;  // one flip per reset operation, set or not
  auto* block = store(e.level).find(e.index >> 9);
  if (!block) return false;
  u64& word = (*block)[(e.index >> 6) & 7];
  u64 mask = 1ull << (e.index & 63);
  bool prev = word & mask;
  if (prev) {
    word &= ~mask;
    bits_live_[static_cast<int>(e.level)]--;
  }
  return prev;
}

bool SparsePageTable::test_accessed(const EntryRef& e) const {
  require_inside_mapping(e, "test_accessed");
  const auto* block = store(e.level).find(e.index >> 9);
  if (!block) return false;
  return (*block)[(e.index >> 6) & 7] & (1ull << (e.index & 63));
}

u64 SparsePageTable::entries_within_count(ByteRange r, Level l) {
  if (r.empty()) return 0;
  u64 cov = level_coverage(l);
  u64 first = (r.start + cov - 1) / cov;
  u64 last = r.end / cov;  // entry i contained iff i >= first && i+1 <= last
  return last > first ? last - first : 0;
}

EntryRef SparsePageTable::first_entry_within(ByteRange r, Level l) {
  u64 cov = level_coverage(l);
  return {l, (r.start + cov - 1) / cov};
}

std::vector<EntryRef> SparsePageTable::entries_within(ByteRange r, Level l) {
  std::vector<EntryRef> out;
  u64 n = entries_within_count(r, l);
  if (n == 0) return out;
  u64 first = (r.start + level_coverage(l) - 1) / level_coverage(l);
  out.reserve(n);
  for (u64 i = 0; i < n; i++) out.push_back({l, first + i});
  return out;
}

void SparsePageTable::clear_pte_range(ByteRange r) {
  if (r.empty()) return;
  u64 first_page = r.start >> 12;
  u64 last_page = (r.end + kPageBytes - 1) >> 12;  // exclusive
  bits_cleared_total_ += last_page - first_page;
  BitBlockStore& st = store(Level::kPte);
  u64 live_drop = 0;
  for (u64 node = first_page >> 9; node <= (last_page - 1) >> 9; node++) {
    auto* block = st.find(node);
    if (!block) continue;
    u64 node_first = node << 9, node_last = (node + 1) << 9;
    u64 lo = std::max(first_page, node_first), hi = std::min(last_page, node_last);
    if (lo == node_first && hi == node_last) {
      for (auto& w : *block) {
        live_drop += std::popcount(w);
        w = 0;
      }
      continue;
    }
    for (u64 p = lo; p < hi;) {
      u64 wi = (p >> 6) & 7;
      u64 word_first = p & ~63ull;
      u64 word_last = word_first + 64;
      u64 span_hi = std::min(hi, word_last);
      u64 mask = (span_hi - word_first >= 64 ? ~0ull : (1ull << (span_hi - word_first)) - 1) &
                 ~((1ull << (p - word_first)) - 1);
      live_drop += std::popcount((*block)[wi] & mask);
      (*block)[wi] &= ~mask;
      p = span_hi;
    }
  }
  bits_live_[static_cast<int>(Level::kPte)] -= live_drop;
}

void SparsePageTable::collect_set_ptes(ByteRange r, std::vector<ByteRange>* out) const {
  if (r.empty()) return;
  u64 first_page = r.start >> 12;
  u64 last_page = (r.end + kPageBytes - 1) >> 12;
  const BitBlockStore& st = store(Level::kPte);
  u64 run_start = 0;
  bool in_run = false;
  auto flush = [&](u64 run_end_page) {
    if (!in_run) return;
    ByteRange pr{run_start << 12, run_end_page << 12};
    if (!out->empty() && out->back().end == pr.start)
      out->back().end = pr.end;
    else
      out->push_back(pr);
    in_run = false;
  };
  for (u64 node = first_page >> 9; node <= (last_page - 1) >> 9; node++) {
    const auto* block = st.find(node);
    u64 node_first = node << 9, node_last = (node + 1) << 9;
    u64 lo = std::max(first_page, node_first), hi = std::min(last_page, node_last);
    if (!block) {
      flush(lo);
      continue;
    }
    for (u64 p = lo; p < hi; p++) {
      bool set = (*block)[(p >> 6) & 7] & (1ull << (p & 63));
      if (set && !in_run) {
        run_start = p;
        in_run = true;
      } else if (!set) {
        flush(p);
      }
    }
  }
  flush(last_page);
}

std::string SparsePageTable::debug_dump_csv() const {
  std::string out = "level,entries_materialized,bits_set\n";
  char line[96];
  for (int l = kNumLevels - 1; l >= 0; l--) {
    std::snprintf(line, sizeof line, "%s,%llu,%llu\n", level_name(static_cast<Level>(l)),
                  (unsigned long long)(stores_[l].node_count() * kFanout),
                  (unsigned long long)bits_live_[l]);
    out += line;
  }
  return out;
}

void LevelIndexSets::build(std::span<const u64> addrs) {
  auto& pte = indices[0];
  pte.resize(addrs.size());
  for (size_t i = 0; i < addrs.size(); i++) pte[i] = addrs[i] >> 12;
  std::sort(pte.begin(), pte.end());
  pte.erase(std::unique(pte.begin(), pte.end()), pte.end());
  for (int l = 1; l < kNumLevels; l++) {
    auto& dst = indices[l];
    const auto& src = indices[l - 1];
    dst.clear();
    dst.reserve(src.size());
    for (u64 idx : src) {
      u64 up = idx >> 9;
      if (dst.empty() || dst.back() != up) dst.push_back(up);
    }
  }
}

void LevelIndexSets::apply_to(SparsePageTable* pt) const {
  for (int l = 0; l < kNumLevels; l++)
    pt->set_entries(static_cast<Level>(l), indices[l]);
}

}  // namespace telemsim
