#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "telemsim/metrics.hpp"
#include "telemsim/rng.hpp"

using namespace telemsim;

namespace {

RangeSet make_set(std::vector<ByteRange> v) {
  RangeSet s;
  for (const auto& r : v) s.add(r);
  return s;
}

}  // namespace

TEST_CASE("precision/recall on exact match, superset, and disjoint reports") {
  RangeSet truth = make_set({{0, 10 * kGiB}});

  PrScore exact = precision_recall({{0, 10 * kGiB}}, truth);
  CHECK(exact.precision == 1.0);
  CHECK(exact.recall == 1.0);

  PrScore superset = precision_recall({{0, 20 * kGiB}}, truth);
  CHECK(superset.precision == 0.5);
  CHECK(superset.recall == 1.0);

  PrScore disjoint = precision_recall({{30 * kGiB, 40 * kGiB}}, truth);
  CHECK(disjoint.precision == 0.0);
  CHECK(disjoint.recall == 0.0);
}

TEST_CASE("empty-report and empty-truth conventions") {
  RangeSet truth = make_set({{0, kGiB}});
  PrScore empty_report = precision_recall({}, truth);
  CHECK(empty_report.precision == 0.0);
  CHECK(empty_report.recall == 0.0);
  CHECK(empty_report.recall_defined);

  PrScore no_truth = precision_recall({{0, kGiB}}, RangeSet{});
  CHECK_FALSE(no_truth.recall_defined);
}

TEST_CASE("symmetry: swapping reported and truth swaps precision and recall") {
  Rng rng(3);
  for (int trial = 0; trial < 200; trial++) {
    auto ranges = [&](int n) {
      std::vector<ByteRange> v;
      for (int i = 0; i < n; i++) {
        u64 a = rng.below(1000) * kPageBytes;
        v.push_back({a, a + (1 + rng.below(100)) * kPageBytes});
      }
      return v;
    };
    RangeSet a = make_set(ranges(3));
    RangeSet b = make_set(ranges(3));
    PrScore fwd = precision_recall(a.ranges(), b);
    PrScore rev = precision_recall(b.ranges(), a);
    CHECK(fwd.precision == doctest::Approx(rev.recall));
    CHECK(fwd.recall == doctest::Approx(rev.precision));
  }
}

TEST_CASE("oracle: byte overlap equals page-bitmap brute force on a small heap") {
  const u64 heap = 16 * kMiB;
  const u64 pages = heap / kPageBytes;
  Rng rng(4242);
  for (int trial = 0; trial < 100; trial++) {
    auto random_set = [&] {
      RangeSet s;
      int n = 1 + static_cast<int>(rng.below(4));
      for (int i = 0; i < n; i++) {
        u64 p0 = rng.below(pages);
        u64 p1 = std::min(pages, p0 + 1 + rng.below(pages / 3));
        s.add({p0 * kPageBytes, p1 * kPageBytes});
      }
      return s;
    };
    RangeSet truth = random_set();
    RangeSet reported = random_set();

    std::vector<char> tmap(pages, 0), rmap(pages, 0);
    for (const auto& r : truth.ranges())
      for (u64 p = r.start / kPageBytes; p < r.end / kPageBytes; p++) tmap[p] = 1;
    for (const auto& r : reported.ranges())
      for (u64 p = r.start / kPageBytes; p < r.end / kPageBytes; p++) rmap[p] = 1;
    u64 nt = 0, nr = 0, hit = 0;
    for (u64 p = 0; p < pages; p++) {
      nt += tmap[p];
      nr += rmap[p];
      hit += tmap[p] & rmap[p];
    }
    PrScore got = precision_recall(reported.ranges(), truth);
    REQUIRE(got.precision == static_cast<double>(hit) / static_cast<double>(nr));
    REQUIRE(got.recall == static_cast<double>(hit) / static_cast<double>(nt));
  }
}

TEST_CASE("heatmap: one range in one cell adds exactly its score") {
  HeatmapGrid grid(1000, 1000 * kPageBytes, 10, 10);
  EngineReport rep;
  rep.t_start_ms = 0;
  rep.t_end_ms = 100;  // time bucket 0
  rep.hot_ranges.push_back({{0, 50 * kPageBytes}, 7.0});  // inside addr bucket 0
  grid.accumulate(rep);
  CHECK(grid.cell(0, 0) == doctest::Approx(7.0));
  CHECK(grid.total_mass() == doctest::Approx(7.0));
}

TEST_CASE("heatmap: range spanning two buckets splits by overlap fraction") {
  HeatmapGrid grid(1000, 1000, 10, 10);  // addr buckets of 100 bytes
  EngineReport rep;
  rep.t_start_ms = 0;
  rep.t_end_ms = 100;
  rep.hot_ranges.push_back({{70, 170}, 10.0});  // 30% in bucket 0, 70% in bucket 1
  grid.accumulate(rep);
  CHECK(grid.cell(0, 0) == doctest::Approx(3.0));
  CHECK(grid.cell(0, 1) == doctest::Approx(7.0));
}

TEST_CASE("heatmap: empty report leaves the grid untouched") {
  HeatmapGrid grid(1000, 1000, 10, 10);
  EngineReport rep;
  rep.t_start_ms = 200;
  rep.t_end_ms = 300;
  grid.accumulate(rep);
  CHECK(grid.total_mass() == 0.0);
}

TEST_CASE("heatmap mass conservation: weights per range sum to one") {
  Rng rng(5);
  HeatmapGrid grid(10'000, kGiB, 17, 23);
  double expect = 0;
  for (int i = 0; i < 200; i++) {
    EngineReport rep;
    rep.t_start_ms = static_cast<i64>(rng.below(9'000));
    rep.t_end_ms = rep.t_start_ms + 200;
    int n = 1 + static_cast<int>(rng.below(4));
    for (int k = 0; k < n; k++) {
      u64 a = rng.below(kGiB - kMiB);
      double score = 1.0 + static_cast<double>(rng.below(100));
      rep.hot_ranges.push_back({{a, a + 1 + rng.below(64 * kMiB)}, score});
    }
    for (auto& sr : rep.hot_ranges) {
      if (sr.range.end > kGiB) sr.range.end = kGiB;
      expect += sr.score;
    }
    grid.accumulate(rep);
  }
  CHECK(grid.total_mass() == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("heatmap csv lists only non-zero cells with the documented header") {
  HeatmapGrid grid(1000, 1000, 4, 4);
  EngineReport rep;
  rep.t_start_ms = 0;
  rep.t_end_ms = 100;
  rep.hot_ranges.push_back({{0, 100}, 1.5});
  grid.accumulate(rep);
  std::string csv = grid.to_csv();
  CHECK(csv.find("t_ms,offset_start,score\n") == 0);
  CHECK(csv.find("0,0,1.5") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // header + one cell
}

namespace {

Scenario summary_scenario() {
  Scenario s;
  s.name = "sum";
  s.heap_bytes = kGiB;
  s.accesses_per_ms = 100;
  s.rng_seed = 1;
  s.phases.push_back({1'000, {{0, kMiB}}, Distribution::kUniformInHot, 0, 0, 0, 1.0});
  s.phases.push_back({1'000, {{kMiB, 2 * kMiB}}, Distribution::kUniformInHot, 0, 0, 0, 1.0});
  return s;
}

WindowStats window_at(i64 t0, double prec, double rec, u64 flips) {
  WindowStats w;
  w.t_start_ms = t0;
  w.t_end_ms = t0 + 100;
  w.pr.precision = prec;
  w.pr.recall = rec;
  w.cost.bit_flips = flips;
  w.cost.work_units = flips;
  return w;
}

}  // namespace

TEST_CASE("summarize: per-phase means with post-change exclusion, costs total") {
  Scenario s = summary_scenario();
  EngineSeries es;
  es.engine = "x";
  // 10 windows per phase; first 2 of each phase are the exclusion window
  for (int w = 0; w < 20; w++) {
    bool phase1 = w >= 10;
    bool excluded = (w % 10) < 2;
    es.windows.push_back(window_at(w * 100, excluded ? 0.0 : (phase1 ? 0.8 : 0.6),
                                   excluded ? 0.0 : (phase1 ? 0.4 : 0.2), 10));
  }
  SummaryConfig cfg;
  cfg.exclusion_windows = 2;
  auto rows = summarize(s, {es}, cfg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].mean_precision == doctest::Approx(0.6));
  CHECK(rows[0].mean_recall == doctest::Approx(0.2));
  CHECK(rows[1].mean_precision == doctest::Approx(0.8));
  CHECK(rows[1].mean_recall == doctest::Approx(0.4));
  CHECK(rows[0].bit_flips == 100);  // exclusion does not hide costs
  CHECK(rows[1].bit_flips == 100);
  CHECK(rows[0].peak_utilization > 0);
}

TEST_CASE("summarize: an engine with no reports scores zero") {
  Scenario s = summary_scenario();
  EngineSeries es;
  es.engine = "silent";
  auto rows = summarize(s, {es});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].mean_precision == 0.0);
  CHECK(rows[0].mean_recall == 0.0);
}

TEST_CASE("summarize: undefined recalls are excluded from the mean") {
  Scenario s = summary_scenario();
  EngineSeries es;
  es.engine = "x";
  auto w0 = window_at(200, 1.0, 0.5, 0);
  auto w1 = window_at(300, 1.0, 0.0, 0);
  w1.pr.recall_defined = false;
  es.windows = {w0, w1};
  SummaryConfig cfg;
  cfg.exclusion_windows = 0;
  auto rows = summarize(s, {es}, cfg);
  CHECK(rows[0].mean_recall == doctest::Approx(0.5));
  CHECK(rows[0].mean_precision == doctest::Approx(1.0));
}
