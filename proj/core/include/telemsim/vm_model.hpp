#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "telemsim/interval_set.hpp"
#include "telemsim/units.hpp"

namespace telemsim {

// Leaf-to-root levels of a 4-level radix page table.
enum class Level : int { kPte = 0, kPmd = 1, kPud = 2, kPgd = 3 };

inline constexpr int kNumLevels = 4;
inline constexpr u64 kFanout = 512;
inline constexpr int kVaBits = 48;
inline constexpr u64 kVaLimit = 1ull << kVaBits;

constexpr int level_shift(Level l) { return 12 + 9 * static_cast<int>(l); }
constexpr u64 level_coverage(Level l) { return 1ull << level_shift(l); }
constexpr const char* level_name(Level l) {
  constexpr const char* names[kNumLevels] = {"PTE", "PMD", "PUD", "PGD"};
  return names[static_cast<int>(l)];
}

struct LevelSpec {
  Level level;
  u64 coverage_bytes;
  u64 fanout;
};

constexpr std::array<LevelSpec, kNumLevels> level_specs() {
  return {{{Level::kPte, level_coverage(Level::kPte), kFanout},
           {Level::kPmd, level_coverage(Level::kPmd), kFanout},
           {Level::kPud, level_coverage(Level::kPud), kFanout},
           {Level::kPgd, level_coverage(Level::kPgd), kFanout}}};
}

// One page table entry, addressed by its global index at a level
// (index = virtual address / coverage).
struct EntryRef {
  Level level = Level::kPte;
  u64 index = 0;

  ByteRange va_range() const {
    return {index << level_shift(level), (index + 1) << level_shift(level)};
  }
  friend bool operator==(const EntryRef&, const EntryRef&) = default;
};

inline EntryRef entry_covering(u64 addr, Level l) { return {l, addr >> level_shift(l)}; }

// Open-addressing map from node index to a 512-bit accessed-bit block.
// Nodes are never removed, only their bits change, so probing needs no
// tombstones. One instance per page table level.
class BitBlockStore {
 public:
  using Block = std::array<u64, 8>;

  BitBlockStore() { rehash(1024); }

  Block* find(u64 node) {
    size_t slot = probe(node);
    return keys_[slot] == node ? &pool_[vals_[slot]] : nullptr;
  }
  const Block* find(u64 node) const {
    size_t slot = probe(node);
    return keys_[slot] == node ? &pool_[vals_[slot]] : nullptr;
  }
  Block& find_or_create(u64 node);

  size_t node_count() const { return pool_.size(); }

 private:
  static constexpr u64 kEmpty = ~0ull;

  size_t probe(u64 node) const {
    size_t slot = (node * 0x9e3779b97f4a7c15ull) & mask_;
    while (keys_[slot] != node && keys_[slot] != kEmpty) slot = (slot + 1) & mask_;
    return slot;
  }
  void rehash(size_t buckets);

  std::vector<u64> keys_;
  std::vector<u32> vals_;
  std::vector<Block> pool_;
  size_t mask_ = 0;
};

// Sparse radix page table over a 48-bit virtual address space. Tracks only
// the ACCESSED bit at each of the four levels; bit blocks materialize
// lazily when a set first touches them, so cold address space costs nothing.
//
// Single-writer: all mutation happens on one simulation thread.
class SparsePageTable {
 public:
  // Registers [start, start+len) as mapped. Adjacent ranges coalesce,
  // overlap is rejected. No storage is allocated until accesses arrive.
  void map_range(u64 start, u64 len);
  void unmap_range(u64 start, u64 len);

  // Simulated access: sets the ACCESSED bit at all four levels along the
  // walk path. Throws std::domain_error for unmapped addresses.
  void record_access(u64 addr);

  // Batch path with identical semantics: set the bits for the given
  // per-level entry indices (sorted unique, precomputed once per batch and
  // shared across engine tables). Setting is idempotent so deduplication
  // loses nothing.
  void set_entries(Level l, std::span<const u64> sorted_unique_indices);

  // Resets the entry's ACCESSED bit and returns the previous value. Counts
  // one flip per call regardless of the prior value: the cost model charges
  // the write, not the state transition.
  bool clear_accessed(const EntryRef& e);
  bool test_accessed(const EntryRef& e) const;

  // Every entry at `level` whose coverage is fully contained in `r`,
  // ascending. May be empty; be mindful of PTE-level calls on huge ranges.
  static std::vector<EntryRef> entries_within(ByteRange r, Level l);
  static u64 entries_within_count(ByteRange r, Level l);
  static EntryRef first_entry_within(ByteRange r, Level l);

  // Linear-scan support. Both operate on whole pages of [r.start, r.end);
  // the caller is expected to pass mapped subranges.
  // Clears every PTE bit in r, charging one flip per page.
  void clear_pte_range(ByteRange r);
  // Appends maximal runs of set-PTE pages within r to `out`.
  void collect_set_ptes(ByteRange r, std::vector<ByteRange>* out) const;

  const RangeSet& mapped() const { return mapped_; }
  bool is_mapped(u64 addr) const { return mapped_.contains(addr); }

  u64 bits_set_total() const { return bits_set_total_; }
  u64 bits_cleared_total() const { return bits_cleared_total_; }
  u64 nodes_materialized(Level l) const { return store(l).node_count(); }
  u64 bits_set_count(Level l) const { return bits_live_[static_cast<int>(l)]; }

  // One line per level: `level,entries_materialized,bits_set`.
  std::string debug_dump_csv() const;

 private:
  BitBlockStore& store(Level l) { return stores_[static_cast<int>(l)]; }
  const BitBlockStore& store(Level l) const { return stores_[static_cast<int>(l)]; }
  void require_inside_mapping(const EntryRef& e, const char* op) const;
  void set_bit(Level l, u64 entry_index);

  RangeSet mapped_;
  std::array<BitBlockStore, kNumLevels> stores_;
  std::array<u64, kNumLevels> bits_live_ = {0, 0, 0, 0};
  u64 bits_set_total_ = 0;
  u64 bits_cleared_total_ = 0;
};

// Per-batch precomputation shared by all engine page tables: sorted unique
// entry indices per level for one access batch.
struct LevelIndexSets {
  std::array<std::vector<u64>, kNumLevels> indices;

  void build(std::span<const u64> addrs);
  void apply_to(SparsePageTable* pt) const;
};

}  // namespace telemsim
