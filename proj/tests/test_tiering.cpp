#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "telemsim/rng.hpp"
#include "telemsim/tiering.hpp"

using namespace telemsim;

namespace {

EngineReport report_with(std::vector<RegionRow> rows) {
  EngineReport rep;
  rep.regions = std::move(rows);
  return rep;
}

AccessBatch batch_of(std::vector<u64> addrs) {
  AccessBatch b;
  b.t_start_ms = 0;
  b.t_end_ms = 1;
  b.addrs = std::move(addrs);
  return b;
}

}  // namespace

TEST_CASE("classification: count threshold is strict") {
  Placement placement;
  TieringPolicy policy;
  EngineReport rep = report_with({
      {{0, kGiB}, 6, 0, 80},        // hot: count 6 > 5
      {{kGiB, 2 * kGiB}, 4, 0, 70}, // not hot
      {{2 * kGiB, 3 * kGiB}, 5, 0, 90},  // boundary: not strictly greater
  });
  MigrationPlan plan = classify_and_plan(rep, placement, policy);
  REQUIRE(plan.items.size() == 1);
  CHECK(plan.items[0].range == ByteRange{0, kGiB});
}

TEST_CASE("classification: large regions are skipped") {
  Placement placement;
  TieringPolicy policy;
  EngineReport rep = report_with({
      {{0, 8 * kGiB}, 40, 0, 100},      // 8 GiB >= 4 GiB: skip
      {{9 * kGiB, 10 * kGiB}, 40, 0, 90},
  });
  MigrationPlan plan = classify_and_plan(rep, placement, policy);
  REQUIRE(plan.items.size() == 1);
  CHECK(plan.items[0].range == ByteRange{9 * kGiB, 10 * kGiB});
}

TEST_CASE("classification: highest scores first, stop at the 10 GiB budget") {
  Placement placement;
  TieringPolicy policy;
  std::vector<RegionRow> rows;
  for (u64 i = 0; i < 12; i++)
    rows.push_back({{i * kGiB, (i + 1) * kGiB}, 40, 0, static_cast<u32>(100 - i)});
  MigrationPlan plan = classify_and_plan(report_with(std::move(rows)), placement, policy);
  REQUIRE(plan.items.size() == 10);
  CHECK(plan.total_bytes() == 10 * kGiB);
  for (size_t i = 1; i < plan.items.size(); i++)
    CHECK(plan.items[i - 1].score >= plan.items[i].score);
  // the two coldest were left behind
  for (const auto& item : plan.items) CHECK(item.range.start < 10 * kGiB);
}

TEST_CASE("classification: near-resident parts are not re-migrated") {
  Placement placement;
  TierModel tier;
  placement.admit({0, 512 * kMiB}, 50, tier.near_capacity_bytes);
  TieringPolicy policy;
  EngineReport rep = report_with({{{0, kGiB}, 40, 0, 90}});
  MigrationPlan plan = classify_and_plan(rep, placement, policy);
  REQUIRE(plan.items.size() == 1);
  CHECK(plan.items[0].range == ByteRange{512 * kMiB, kGiB});
}

TEST_CASE("apply: empty plan is free") {
  Placement placement;
  TierModel tier;
  CHECK(apply_plan({}, &placement, tier) == 0.0);
  CHECK(placement.near_bytes() == 0);
}

TEST_CASE("apply: migration time is bytes over bandwidth") {
  Placement placement;
  TierModel tier;  // 10 GiB/s
  MigrationPlan plan;
  plan.items.push_back({{0, 10 * kGiB}, 50});
  CHECK(apply_plan(plan, &placement, tier) == doctest::Approx(1.0));
  CHECK(placement.near_bytes() == 10 * kGiB);
}

TEST_CASE("apply: migrating a near-resident range is a consistency error") {
  Placement placement;
  TierModel tier;
  MigrationPlan plan;
  plan.items.push_back({{0, kGiB}, 50});
  apply_plan(plan, &placement, tier);
  CHECK_THROWS_AS(apply_plan(plan, &placement, tier), std::logic_error);
}

TEST_CASE("capacity pressure evicts the coldest entries first") {
  Placement placement;
  TierModel tier;
  tier.near_capacity_bytes = 3 * kGiB;
  MigrationPlan plan;
  plan.items.push_back({{0, kGiB}, 50});
  plan.items.push_back({{10 * kGiB, 11 * kGiB}, 20});  // coldest
  plan.items.push_back({{20 * kGiB, 21 * kGiB}, 80});
  apply_plan(plan, &placement, tier);
  CHECK(placement.near_bytes() == 3 * kGiB);

  MigrationPlan more;
  more.items.push_back({{30 * kGiB, 31 * kGiB}, 60});
  apply_plan(more, &placement, tier);
  CHECK(placement.near_bytes() == 3 * kGiB);
  CHECK_FALSE(placement.is_near(10 * kGiB));  // score-20 entry evicted
  CHECK(placement.is_near(0));
  CHECK(placement.is_near(20 * kGiB));
  CHECK(placement.is_near(30 * kGiB));
}

TEST_CASE("capacity invariant holds under random plans") {
  Placement placement;
  TierModel tier;
  tier.near_capacity_bytes = 8 * kGiB;
  Rng rng(6);
  u64 next_start = 0;
  for (int i = 0; i < 100; i++) {
    MigrationPlan plan;
    u64 len = (1 + rng.below(3)) * kGiB;
    plan.items.push_back({{next_start, next_start + len}, static_cast<double>(rng.below(100))});
    next_start += len + kGiB;
    apply_plan(plan, &placement, tier);
    REQUIRE(placement.near_bytes() <= tier.near_capacity_bytes);
  }
}

TEST_CASE("throughput proxy: all near, all far, and the 50/50 mix") {
  TierModel tier;  // near 100 ns, far 300 ns
  Placement placement;
  AccessBatch all_far = batch_of({0, kMiB, 2 * kMiB, 3 * kMiB});
  CHECK(throughput_proxy(all_far, placement, tier) == doctest::Approx(1e9 / 300.0));

  placement.admit({0, 4 * kMiB}, 50, tier.near_capacity_bytes);
  CHECK(throughput_proxy(all_far, placement, tier) == doctest::Approx(1e9 / 100.0));

  AccessBatch mix = batch_of({0, kMiB, 100 * kMiB, 101 * kMiB});
  CHECK(throughput_proxy(mix, placement, tier) == doctest::Approx(5e6));  // mean 200 ns

  CHECK(throughput_proxy(batch_of({}), placement, tier) == 0.0);
}

TEST_CASE("score updates refresh eviction order") {
  Placement placement;
  TierModel tier;
  placement.admit({0, kGiB}, 90, tier.near_capacity_bytes);
  placement.admit({2 * kGiB, 3 * kGiB}, 10, tier.near_capacity_bytes);
  EngineReport rep = report_with({
      {{0, kGiB}, 0, 5, 5},           // went cold
      {{2 * kGiB, 3 * kGiB}, 40, 0, 95},  // heated up
  });
  placement.update_scores(rep);
  CHECK(placement.entries()[0].score == doctest::Approx(5));
  CHECK(placement.entries()[1].score == doctest::Approx(95));
}
