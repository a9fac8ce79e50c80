#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "telemsim/region.hpp"

using namespace telemsim;

namespace {

RangeSet heap(u64 bytes) {
  RangeSet s;
  s.add({0, bytes});
  return s;
}

void check_coverage(const RegionSet& set, const RangeSet& mapped) {
  RangeSet covered;
  const auto& rs = set.regions();
  for (size_t i = 0; i < rs.size(); i++) {
    REQUIRE_FALSE(rs[i].range.empty());
    if (i > 0) REQUIRE(rs[i - 1].range.end <= rs[i].range.start);
    covered.add(rs[i].range);
  }
  REQUIRE(covered == mapped);
}

}  // namespace

TEST_CASE("interval config validation") {
  IntervalConfig good;
  good.validate();
  CHECK(good.samples_per_window() == 40);
  IntervalConfig bad;
  bad.sampling_interval_ms = 3;  // does not divide 200
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("init splits a 5 TiB heap into ten 512 GiB regions") {
  RegionSet set = RegionSet::init(heap(5 * kTiB), 10);
  REQUIRE(set.regions().size() == 10);
  for (const auto& r : set.regions()) CHECK(r.range.len() == 512 * kGiB);
  check_coverage(set, heap(5 * kTiB));
}

TEST_CASE("init with one region covers everything") {
  RegionSet set = RegionSet::init(heap(kGiB), 1);
  REQUIRE(set.regions().size() == 1);
  CHECK(set.regions()[0].range == ByteRange{0, kGiB});
}

TEST_CASE("init distributes regions across mapped ranges by length") {
  RangeSet mapped;
  mapped.add({0, kGiB});
  mapped.add({2 * kGiB, 3 * kGiB});
  RegionSet set = RegionSet::init(mapped, 4);
  REQUIRE(set.regions().size() == 4);
  check_coverage(set, mapped);
  u64 in_first = 0;
  for (const auto& r : set.regions())
    if (r.range.end <= kGiB) in_first++;
  CHECK(in_first == 2);
}

TEST_CASE("init rejects bad arguments") {
  CHECK_THROWS_AS(RegionSet::init(RangeSet{}, 4), std::invalid_argument);
  CHECK_THROWS_AS(RegionSet::init(heap(kGiB), 0), std::invalid_argument);
}

TEST_CASE("record_window_sample counts only positive samples") {
  RegionSet set = RegionSet::init(heap(kGiB), 1);
  set.record_window_sample(0, true);
  set.record_window_sample(0, true);
  set.record_window_sample(0, false);
  set.record_window_sample(0, true);
  CHECK(set.regions()[0].access_count == 3);
}

TEST_CASE("forty positive samples saturate the window count") {
  RegionSet set = RegionSet::init(heap(kGiB), 1);
  for (int i = 0; i < 40; i++) set.record_window_sample(0, true);
  CHECK(set.regions()[0].access_count == 40);
}

TEST_CASE("merge joins adjacent regions with close counts") {
  RegionConfig cfg;
  cfg.merge_threshold_frac = 0.05;  // threshold 2 of 40
  cfg.min_regions = 1;              // merged size cap: whole heap
  cfg.max_regions = 2;              // suppress splitting to observe the merge alone
  Rng rng(1);
  RegionSet set = RegionSet::init(heap(kGiB), 2);
  set.regions()[0].access_count = 40;
  set.regions()[1].access_count = 39;
  set.end_window_maintenance(40, cfg, rng);
  REQUIRE(set.regions().size() == 1);
  CHECK(set.regions()[0].range == ByteRange{0, kGiB});
}

TEST_CASE("merge averages counts by size and keeps the minimum age") {
  RegionConfig cfg;
  cfg.min_regions = 1;
  cfg.max_regions = 2;
  Rng rng(1);
  RegionSet set = RegionSet::init(heap(kGiB), 2);  // two 512 MiB halves
  set.regions()[0].access_count = 40;
  set.regions()[0].age = 7;
  set.regions()[1].access_count = 38;
  set.regions()[1].age = 3;
  set.end_window_maintenance(40, cfg, rng);
  REQUIRE(set.regions().size() == 1);
  // size-weighted mean of (40, 38) is 39; ages: min(7,3)=3, then the
  // pattern-change pass resets it (39 vs last 0) to 0
  CHECK(set.regions()[0].last_count == 39);
  CHECK(set.regions()[0].age == 0);
}

TEST_CASE("distant counts do not merge") {
  RegionConfig cfg;
  cfg.min_regions = 1;
  cfg.max_regions = 2;
  Rng rng(1);
  RegionSet set = RegionSet::init(heap(kGiB), 2);
  set.regions()[0].access_count = 40;
  set.regions()[1].access_count = 10;
  set.end_window_maintenance(40, cfg, rng);
  CHECK(set.regions().size() == 2);
}

TEST_CASE("non-adjacent regions never merge across a mapping gap") {
  RangeSet mapped;
  mapped.add({0, kGiB});
  mapped.add({2 * kGiB, 3 * kGiB});
  RegionConfig cfg;
  cfg.max_regions = 2;
  Rng rng(1);
  RegionSet set = RegionSet::init(mapped, 2);
  set.end_window_maintenance(40, cfg, rng);
  CHECK(set.regions().size() == 2);
}

TEST_CASE("five regions under half the cap split into ten") {
  RegionConfig cfg;
  cfg.merge_threshold_frac = 0.0;  // isolate split behavior
  Rng rng(2);
  RegionSet set = RegionSet::init(heap(10 * kGiB), 5);
  // distinct counts so the merge pass keeps all five
  for (size_t i = 0; i < 5; i++) set.regions()[i].access_count = static_cast<u32>(10 * i);
  set.end_window_maintenance(40, cfg, rng);
  CHECK(set.regions().size() == 10);
  check_coverage(set, heap(10 * kGiB));
}

TEST_CASE("split offsets stay within 10 to 90 percent of the parent") {
  RegionConfig cfg;
  cfg.merge_threshold_frac = 0.0;
  Rng rng(3);
  for (int trial = 0; trial < 10'000 / 8; trial++) {
    RegionSet set = RegionSet::init(heap(kGiB), 1);
    set.regions()[0].access_count = 40;  // hot: two-way split
    set.regions()[0].last_count = 40;    // no pattern change
    set.end_window_maintenance(40, cfg, rng);
    REQUIRE(set.regions().size() == 2);
    double frac = static_cast<double>(set.regions()[0].range.len()) / static_cast<double>(kGiB);
    REQUIRE(frac >= 0.10 - 0.01);
    REQUIRE(frac <= 0.90 + 0.01);
  }
}

TEST_CASE("population never exceeds the cap and recovers the minimum") {
  RegionConfig cfg;
  Rng rng(4);
  RegionSet set = RegionSet::init(heap(5 * kTiB), 10);
  for (int w = 0; w < 50; w++) {
    set.end_window_maintenance(40, cfg, rng);
    CHECK(set.regions().size() <= cfg.max_regions);
    CHECK(set.regions().size() >= cfg.min_regions);
    check_coverage(set, heap(5 * kTiB));
  }
}

TEST_CASE("merge idempotence: a second pass without new samples changes nothing") {
  RegionConfig cfg;
  cfg.min_regions = 2;  // merged size cap: half the heap
  cfg.max_regions = 2;  // suppress splits
  Rng rng(5);
  RegionSet set = RegionSet::init(heap(kGiB), 8);
  for (size_t i = 0; i < set.regions().size(); i++)
    set.regions()[i].access_count = (i < 4) ? 40 : 0;
  set.end_window_maintenance(40, cfg, rng);
  auto snapshot = set.regions();
  set.end_window_maintenance(40, cfg, rng);
  REQUIRE(set.regions().size() == snapshot.size());
  for (size_t i = 0; i < snapshot.size(); i++)
    CHECK(set.regions()[i].range == snapshot[i].range);
}

TEST_CASE("stale cold regions fan out wider than two") {
  RegionConfig cfg;
  Rng rng(6);
  RegionSet set = RegionSet::init(heap(kGiB), 1);
  set.regions()[0].age = 10;  // long cold
  set.end_window_maintenance(40, cfg, rng);
  CHECK(set.regions().size() == 8);
  check_coverage(set, heap(kGiB));
}

TEST_CASE("aging: stable counts age, pattern changes reset") {
  RegionConfig cfg;
  cfg.max_regions = 2;
  Rng rng(7);
  RegionSet set = RegionSet::init(heap(kGiB), 1);
  for (int w = 0; w < 5; w++) {
    for (int s = 0; s < 40; s++) set.record_window_sample(0, true);
    set.end_window_maintenance(40, cfg, rng);
  }
  CHECK(set.regions()[0].age == 4);  // first window is a pattern change from 0
  // now the region goes cold: age resets
  set.end_window_maintenance(40, cfg, rng);
  CHECK(set.regions()[0].age == 0);
}

TEST_CASE("score formula: bounded, monotone, and the documented points") {
  RegionConfig cfg;
  Region r;
  SUBCASE("zero count, zero age scores zero") {
    CHECK(region_score(r, 40, cfg) == 0);
  }
  SUBCASE("full count with capped age saturates at 100") {
    r.access_count = 40;
    r.age = 10;
    CHECK(region_score(r, 40, cfg) == 100);
  }
  SUBCASE("count component saturates at samples per window") {
    r.access_count = 40;
    r.age = 0;
    CHECK(region_score(r, 40, cfg) == 70);  // full count part, no age part
    r.access_count = 80;
    CHECK(region_score(r, 40, cfg) == 70);
  }
  SUBCASE("half count, zero age") {
    r.access_count = 20;
    CHECK(region_score(r, 40, cfg) == 35);  // 0.7 * 50
  }
  SUBCASE("monotone in count and age") {
    u32 prev = 0;
    for (u32 c = 0; c <= 40; c++) {
      r.access_count = c;
      u32 s = region_score(r, 40, cfg);
      CHECK(s >= prev);
      prev = s;
    }
    prev = 0;
    r.access_count = 40;
    for (u32 a = 0; a <= 12; a++) {
      r.age = a;
      u32 s = region_score(r, 40, cfg);
      CHECK(s >= prev);
      CHECK(s <= 100);
      prev = s;
    }
  }
}

TEST_CASE("refresh keeps, trims, and creates regions to match the mapping") {
  RangeSet mapped = heap(2 * kGiB);
  RegionSet set = RegionSet::init(mapped, 4);

  SUBCASE("no change is a no-op") {
    auto before = set.regions();
    set.refresh_mappings(mapped);
    REQUIRE(set.regions().size() == before.size());
    for (size_t i = 0; i < before.size(); i++) CHECK(set.regions()[i].range == before[i].range);
  }
  SUBCASE("a new mapping gains exactly one fresh region") {
    mapped.add({3 * kGiB, 4 * kGiB});
    set.refresh_mappings(mapped);
    CHECK(set.regions().size() == 5);
    CHECK(set.regions().back().range == ByteRange{3 * kGiB, 4 * kGiB});
    check_coverage(set, mapped);
  }
  SUBCASE("an unmapped hole drops and trims regions") {
    mapped.subtract({512 * kMiB, 3 * kGiB});  // keep [0,512MiB)
    set.refresh_mappings(mapped);
    check_coverage(set, mapped);
    for (const auto& r : set.regions()) CHECK(r.range.end <= 512 * kMiB);
  }
}
