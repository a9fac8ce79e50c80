#include "telemsim/repro.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <stdexcept>

#include "telemsim/baselines.hpp"
#include "telemsim/harness.hpp"
#include "telemsim/metrics.hpp"
#include "telemsim/telescope.hpp"

namespace telemsim {

namespace {

namespace fs = std::filesystem;

constexpr u64 kSeeds[3] = {1, 2, 3};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double median3(double a, double b, double c) {
  return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

std::vector<RunResult> run_parallel(std::vector<RunConfig> configs, int jobs) {
  std::vector<RunResult> results(configs.size());
  size_t next = 0;
  while (next < configs.size()) {
    size_t batch = std::min<size_t>(static_cast<size_t>(std::max(jobs, 1)), configs.size() - next);
    std::vector<std::future<RunResult>> futs;
    for (size_t i = 0; i < batch; i++) {
      RunConfig cfg = configs[next + i];
      futs.push_back(std::async(std::launch::async, [cfg] { return run(cfg); }));
    }
    for (size_t i = 0; i < batch; i++) results[next + i] = futs[i].get();
    next += batch;
  }
  return results;
}

const PhaseSummaryRow& summary_row(const RunResult& r, const std::string& engine, int phase) {
  for (const auto& row : r.summary)
    if (row.engine == engine && row.phase == phase) return row;
  throw std::logic_error("missing summary row " + engine);
}

double med_phase(const std::vector<RunResult>& runs, const std::string& engine, int phase,
                 bool recall) {
  auto get = [&](const RunResult& r) {
    const auto& row = summary_row(r, engine, phase);
    return recall ? row.mean_recall : row.mean_precision;
  };
  return median3(get(runs[0]), get(runs[1]), get(runs[2]));
}

std::vector<std::string> engine_matrix() {
  return {"damon-mod", "damon-agg", "pmu-mod", "pmu-agg", "telescope-bnd", "telescope-flx"};
}

RunConfig base_config(const std::string& scenario, const std::vector<std::string>& engines,
                      u64 seed, const std::string& out_dir) {
  RunConfig cfg;
  cfg.scenario = builtin_scenario(scenario, seed);
  cfg.engine_tags = engines;
  cfg.seed = seed;
  cfg.out_dir = out_dir;
  return cfg;
}

// --------------------------------------------------------------------------
// A1 + A4: multi-phase comparison and bit-flip economy

std::vector<RunResult> run_multi_phase(const std::string& out_dir,
                                       const std::vector<std::string>& engines, int jobs) {
  std::vector<RunConfig> cfgs;
  for (u64 seed : kSeeds)
    cfgs.push_back(base_config("multi_phase_5tb", engines, seed,
                               out_dir + "/seed" + std::to_string(seed)));
  return run_parallel(std::move(cfgs), jobs);
}

CriterionResult check_a1(const std::string& out_dir, int jobs) {
  auto t0 = std::chrono::steady_clock::now();
  auto runs = run_multi_phase(out_dir, engine_matrix(), jobs);
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  CriterionResult c{"A1", true, ""};
  std::string detail;
  for (const char* tel : {"telescope-bnd", "telescope-flx"}) {
    for (int p = 0; p < 3; p++) {
      double prec = med_phase(runs, tel, p, false);
      double rec = med_phase(runs, tel, p, true);
      if (prec < 0.85 || rec < 0.85) c.pass = false;
      detail += fmt("%s[p%d] P=%.3f R=%.3f; ", tel, p, prec, rec);
    }
  }
  for (const char* dm : {"damon-mod", "damon-agg"}) {
    for (int p = 0; p < 3; p++) {
      double rec = med_phase(runs, dm, p, true);
      if (rec > 0.1) c.pass = false;
      detail += fmt("%s[p%d] R=%.3f; ", dm, p, rec);
    }
  }
  for (int p = 0; p < 3; p++) {
    double rec = med_phase(runs, "pmu-agg", p, true);
    double prec = med_phase(runs, "pmu-agg", p, false);
    if (rec > 0.2 || prec < 0.8) c.pass = false;
    detail += fmt("pmu-agg[p%d] P=%.3f R=%.3f; ", p, prec, rec);
  }
  if (elapsed > 600.0) c.pass = false;
  detail += fmt("elapsed=%.0fs (budget 600s)", elapsed);
  c.details = detail;
  return c;
}

CriterionResult check_a4(const std::string& out_dir, int jobs) {
  std::vector<std::string> engines = {"damon-mod", "damon-agg", "telescope-bnd", "telescope-flx"};
  auto runs = run_multi_phase(out_dir, engines, jobs);

  auto totals = [](const RunResult& r, const std::string& tag) {
    const EngineSeries* es = r.series_for(tag);
    u64 flips = 0, covered = 0;
    for (const auto& w : es->windows) {
      flips += w.cost.bit_flips;
      covered += w.covered_bytes;
    }
    return std::pair<u64, u64>{flips, covered};
  };

  double ratios[3], tel_flips[3], damon_flips[3];
  for (int i = 0; i < 3; i++) {
    auto [fb, cb] = totals(runs[static_cast<size_t>(i)], "telescope-bnd");
    auto [ff, cf] = totals(runs[static_cast<size_t>(i)], "telescope-flx");
    auto [fm, cm] = totals(runs[static_cast<size_t>(i)], "damon-mod");
    auto [fa, ca] = totals(runs[static_cast<size_t>(i)], "damon-agg");
    double tel_per_gib = static_cast<double>(fb + ff) / (static_cast<double>(cb + cf) / kGiB);
    double damon_per_gib = static_cast<double>(fm + fa) / (static_cast<double>(cm + ca) / kGiB);
    ratios[i] = damon_per_gib / tel_per_gib;
    tel_flips[i] = static_cast<double>(fb + ff);
    damon_flips[i] = static_cast<double>(fm + fa);
  }
  double ratio = median3(ratios[0], ratios[1], ratios[2]);
  double tel = median3(tel_flips[0], tel_flips[1], tel_flips[2]);
  double damon = median3(damon_flips[0], damon_flips[1], damon_flips[2]);

  CriterionResult c{"A4", ratio >= 10.0 && tel <= damon, ""};
  c.details = fmt("flips-per-covered-GiB ratio damon/telescope=%.3g (need >=10); "
                  "total flips telescope=%.4g damon=%.4g (need tel<=damon)",
                  ratio, tel, damon);
  return c;
}

// --------------------------------------------------------------------------
// A2: sub-terabyte sweep

CriterionResult check_a2(const std::string& out_dir, int jobs) {
  const char* scens[3] = {"subtb_1g", "subtb_10g", "subtb_100g"};
  std::vector<RunConfig> cfgs;
  for (const char* scen : scens)
    for (u64 seed : kSeeds)
      cfgs.push_back(base_config(scen, engine_matrix(), seed,
                                 out_dir + "/" + scen + "/seed" + std::to_string(seed)));
  auto all = run_parallel(std::move(cfgs), jobs);
  auto runs_of = [&](int scen_idx) {
    return std::vector<RunResult>{all[static_cast<size_t>(scen_idx * 3 + 0)],
                                  all[static_cast<size_t>(scen_idx * 3 + 1)],
                                  all[static_cast<size_t>(scen_idx * 3 + 2)]};
  };

  CriterionResult c{"A2", true, ""};
  std::string detail;

  auto r1g = runs_of(0);
  detail += "1g:";
  for (const auto& tag : engine_matrix()) {
    double prec = med_phase(r1g, tag, 0, false);
    double rec = med_phase(r1g, tag, 0, true);
    if (prec < 0.85 || rec < 0.85) c.pass = false;
    detail += fmt(" %s P=%.2f R=%.2f", tag.c_str(), prec, rec);
  }

  auto r100g = runs_of(2);
  detail += "; 100g:";
  for (const char* dm : {"damon-mod", "damon-agg"}) {
    double rec = med_phase(r100g, dm, 0, true);
    if (rec > 0.1) c.pass = false;
    detail += fmt(" %s R=%.3f", dm, rec);
  }
  for (const char* tel : {"telescope-bnd", "telescope-flx"}) {
    double prec = med_phase(r100g, tel, 0, false);
    double rec = med_phase(r100g, tel, 0, true);
    if (prec < 0.85 || rec < 0.85) c.pass = false;
    detail += fmt(" %s P=%.2f R=%.2f", tel, prec, rec);
  }

  auto r10g = runs_of(1);
  detail += "; pmu recall";
  for (const char* pmu : {"pmu-mod", "pmu-agg"}) {
    double a = med_phase(r1g, pmu, 0, true);
    double b = med_phase(r10g, pmu, 0, true);
    double d = med_phase(r100g, pmu, 0, true);
    if (!(a >= b && b >= d)) c.pass = false;
    detail += fmt(" %s %.2f>=%.2f>=%.2f", pmu, a, b, d);
  }
  c.details = detail;
  return c;
}

// --------------------------------------------------------------------------
// A3: needle in a haystack

CriterionResult check_a3(const std::string& out_dir, int jobs) {
  std::vector<std::string> engines = {"telescope-bnd", "telescope-flx", "damon-mod", "damon-agg"};
  std::vector<RunConfig> cfgs;
  for (u64 seed : kSeeds)
    cfgs.push_back(base_config("needle_5tb", engines, seed,
                               out_dir + "/seed" + std::to_string(seed)));
  auto runs = run_parallel(std::move(cfgs), jobs);

  CriterionResult c{"A3", true, ""};
  std::string detail;
  for (const char* tel : {"telescope-bnd", "telescope-flx"}) {
    double prec = med_phase(runs, tel, 0, false);
    double rec = med_phase(runs, tel, 0, true);
    if (prec < 0.8 || rec < 0.8) c.pass = false;
    detail += fmt("%s P=%.3f R=%.3f; ", tel, prec, rec);
  }
  for (const char* dm : {"damon-mod", "damon-agg"}) {
    double worst_empty = 1.0, worst_rec = 0.0;
    for (const auto& r : runs) {
      const EngineSeries* es = r.series_for(dm);
      u64 empty = 0;
      for (const auto& w : es->windows)
        if (w.reported_bytes == 0) empty++;
      worst_empty = std::min(worst_empty,
                             static_cast<double>(empty) / static_cast<double>(es->windows.size()));
      worst_rec = std::max(worst_rec, summary_row(r, dm, 0).mean_recall);
    }
    if (worst_empty < 0.95 || worst_rec > 1e-3) c.pass = false;
    detail += fmt("%s empty-windows=%.3f R=%.4f; ", dm, worst_empty, worst_rec);
  }
  c.details = detail;
  return c;
}

// --------------------------------------------------------------------------
// A5: linear scan closed form

CriterionResult check_a5(const std::string&, int) {
  ScanThrottle agg = ScanThrottle::preset(ScanMode::kAggressive);
  ScanThrottle mod = ScanThrottle::preset(ScanMode::kModerate);
  ScanThrottle con = ScanThrottle::preset(ScanMode::kConservative);

  double t_agg = linear_scan_model(5 * kTiB, agg).scan_time_s;
  double t_mod = linear_scan_model(5 * kTiB, mod).scan_time_s;
  double t_con = linear_scan_model(5 * kTiB, con).scan_time_s;

  bool pass = std::abs(t_agg - 110.0) <= 1.1 && std::abs(t_mod - 314.8) <= 3.148 &&
              std::abs(t_con - 2158.0) <= 21.58;
  for (u64 heap : {100 * kGiB, 1 * kTiB, 5 * kTiB}) {
    double u_agg = linear_scan_model(heap, agg).cpu_utilization;
    double u_mod = linear_scan_model(heap, mod).cpu_utilization;
    double u_con = linear_scan_model(heap, con).cpu_utilization;
    if (!(u_con < u_mod && u_mod < u_agg)) pass = false;
  }
  CriterionResult c{"A5", pass, ""};
  c.details = fmt("5TiB scan times agg=%.1fs mod=%.1fs (want 314.8 +/-1%%) con=%.0fs "
                  "(want 2158 +/-1%%); utilization ordering con<mod<agg over 3 heap sizes",
                  t_agg, t_mod, t_con);
  return c;
}

// --------------------------------------------------------------------------
// A6: tiering throughput

CriterionResult check_a6(const std::string& out_dir, int jobs) {
  std::vector<RunConfig> cfgs;
  for (u64 seed : kSeeds) {
    for (const char* tag : {"telescope-flx", "damon-mod"}) {
      RunConfig cfg = base_config("hotspot_2tb", {tag}, seed,
                                  out_dir + "/" + tag + "/seed" + std::to_string(seed));
      cfg.tiering = true;
      cfgs.push_back(std::move(cfg));
    }
  }
  auto runs = run_parallel(std::move(cfgs), jobs);

  double tel_ratio[3], cross_ratio[3];
  u64 damon_migrated = 0;
  for (int i = 0; i < 3; i++) {
    const RunResult& tel = runs[static_cast<size_t>(2 * i)];
    const RunResult& dam = runs[static_cast<size_t>(2 * i + 1)];
    tel_ratio[i] = tel.steady_ops_per_s / tel.baseline_ops_per_s;
    cross_ratio[i] = tel.steady_ops_per_s / dam.steady_ops_per_s;
    damon_migrated += dam.migrated_bytes_total;
  }
  double r_base = median3(tel_ratio[0], tel_ratio[1], tel_ratio[2]);
  double r_cross = median3(cross_ratio[0], cross_ratio[1], cross_ratio[2]);

  CriterionResult c{"A6", r_base >= 1.2 && r_cross >= 1.15 && damon_migrated == 0, ""};
  c.details = fmt("telescope-flx steady/baseline=%.2f (need >=1.2), vs damon-driven=%.2f "
                  "(need >=1.15), damon migrated=%llu bytes (need 0)",
                  r_base, r_cross, (unsigned long long)damon_migrated);
  return c;
}

// --------------------------------------------------------------------------
// A7: small-instance oracle equivalence

CriterionResult check_a7(const std::string&, int) {
  bool pass = true;
  std::string detail;
  const u64 heap = 16 * kMiB;
  const int n_accesses = 10'000;

  // (a) page table bit state vs brute-force entry sets, for both the
  // per-access path and the batched path.
  {
    Rng rng(12345);
    std::vector<u64> addrs;
    addrs.reserve(n_accesses);
    for (int i = 0; i < n_accesses; i++) addrs.push_back(rng.below(heap));

    SparsePageTable one_by_one, batched;
    one_by_one.map_range(0, heap);
    batched.map_range(0, heap);
    for (u64 a : addrs) one_by_one.record_access(a);
    LevelIndexSets sets;
    sets.build(addrs);
    sets.apply_to(&batched);

    u64 mismatches = 0;
    for (int l = 0; l < kNumLevels; l++) {
      Level level = static_cast<Level>(l);
      std::set<u64> expect;
      for (u64 a : addrs) expect.insert(a >> level_shift(level));
      u64 entries = (heap + level_coverage(level) - 1) >> level_shift(level);
      for (u64 i = 0; i < entries; i++) {
        bool want = expect.count(i) > 0;
        if (one_by_one.test_accessed({level, i}) != want) mismatches++;
        if (batched.test_accessed({level, i}) != want) mismatches++;
      }
    }
    if (mismatches) pass = false;
    detail += fmt("pt-state mismatches=%llu; ", (unsigned long long)mismatches);
  }

  // (b) linear-scan hot set vs the touched-page oracle.
  {
    Scenario tiny;
    tiny.name = "oracle";
    tiny.heap_bytes = heap;
    tiny.phases.push_back({1000, {{0, heap}}, Distribution::kUniformInHot, 0, 0, 0, 1.0});
    LinearScanEngine scan("scan-agg", tiny, IntervalConfig{}, ScanThrottle::preset(ScanMode::kAggressive));
    scan.finish_pass();  // pass 1: clear everything
    Rng rng(777);
    std::vector<u64> pages;
    for (int i = 0; i < n_accesses; i++) {
      u64 a = rng.below(heap);
      scan.table().record_access(a);
      pages.push_back(a >> 12);
    }
    scan.finish_pass();  // pass 2: collect
    std::sort(pages.begin(), pages.end());
    pages.erase(std::unique(pages.begin(), pages.end()), pages.end());
    std::vector<ByteRange> expect;
    for (u64 p : pages) {
      ByteRange pr{p << 12, (p + 1) << 12};
      if (!expect.empty() && expect.back().end == pr.start)
        expect.back().end = pr.end;
      else
        expect.push_back(pr);
    }
    bool ok = scan.last_hot_set() == expect;
    if (!ok) pass = false;
    detail += fmt("scan hot-set match=%s (%zu ranges); ", ok ? "yes" : "NO", expect.size());
  }

  // (c) byte-overlap precision/recall vs page-bitmap brute force.
  {
    Rng rng(4242);
    u64 bad = 0;
    const u64 pages = heap / kPageBytes;
    for (int trial = 0; trial < 50; trial++) {
      auto random_ranges = [&](int max_n) {
        std::vector<ByteRange> v;
        int n = 1 + static_cast<int>(rng.below(static_cast<u64>(max_n)));
        for (int i = 0; i < n; i++) {
          u64 p0 = rng.below(pages);
          u64 len = 1 + rng.below(pages / 4);
          u64 p1 = std::min(pages, p0 + len);
          v.push_back({p0 * kPageBytes, p1 * kPageBytes});
        }
        return v;
      };
      RangeSet truth;
      for (const auto& r : random_ranges(4)) truth.add(r);
      RangeSet reported_set;
      for (const auto& r : random_ranges(4)) reported_set.add(r);
      std::vector<ByteRange> reported = reported_set.ranges();

      std::vector<char> tmap(pages, 0), rmap(pages, 0);
      for (const auto& r : truth.ranges())
        for (u64 p = r.start / kPageBytes; p < r.end / kPageBytes; p++) tmap[p] = 1;
      for (const auto& r : reported)
        for (u64 p = r.start / kPageBytes; p < r.end / kPageBytes; p++) rmap[p] = 1;
      u64 nt = 0, nr = 0, hit = 0;
      for (u64 p = 0; p < pages; p++) {
        nt += tmap[p];
        nr += rmap[p];
        hit += tmap[p] & rmap[p];
      }
      PrScore got = precision_recall(reported, truth);
      double want_p = nr ? static_cast<double>(hit) / static_cast<double>(nr) : 0.0;
      double want_r = static_cast<double>(hit) / static_cast<double>(nt);
      if (got.precision != want_p || got.recall != want_r) bad++;
    }
    if (bad) pass = false;
    detail += fmt("pr brute-force mismatches=%llu/50", (unsigned long long)bad);
  }

  return {"A7", pass, detail};
}

// --------------------------------------------------------------------------
// A8: worked level-selection geometry

CriterionResult check_a8(const std::string&, int) {
  bool pass = true;
  std::string detail;

  {  // 600 GiB: PGD entry 0 plus a PUD-profiled 88 GiB tail
    ByteRange region{0, 600 * kGiB};
    auto [level, entries] = candidate_entries_bounded(region);
    bool ok = level == Level::kPgd && entries.size() == 1 && entries[0].index == 0;
    ProfileChoice head = profile_entry_at(region, VariantConfig::bounded(), 0);
    ProfileChoice tail = profile_entry_at(region, VariantConfig::bounded(), 600 * kGiB - 1);
    ok = ok && head.entry.level == Level::kPgd && head.entry.index == 0;
    ok = ok && tail.entry.level == Level::kPud && tail.entry.index == 599 &&
         tail.overshoot_bytes == 0;
    if (!ok) pass = false;
    detail += fmt("600GiB->PGD+PUD-tail %s; ", ok ? "ok" : "FAIL");
  }
  {  // 300 GiB: no PGD entry fits, 300 PUD candidates
    auto [level, entries] = candidate_entries_bounded({0, 300 * kGiB});
    bool ok = level == Level::kPud && entries.size() == 300;
    if (!ok) pass = false;
    detail += fmt("300GiB->PUD(%zu); ", entries.size());
  }
  {  // flex 450 GiB straddling a PGD base by 10 GiB: 72 GiB overshoot, within 15%
    u64 pgd3 = 3 * level_coverage(Level::kPgd);
    ByteRange region{pgd3 - 10 * kGiB, pgd3 + 440 * kGiB};
    auto [level, entries] = candidate_entries_flex(region, VariantConfig::flex().error_thresholds);
    ProfileChoice choice = profile_entry_at(region, VariantConfig::flex(), pgd3);
    bool ok = level == Level::kPgd && entries.size() == 1 && entries[0].index == 3 &&
              choice.entry.level == Level::kPgd && choice.overshoot_bytes == 72 * kGiB;
    if (!ok) pass = false;
    detail += fmt("450GiB@15%%->PGD overshoot=%lluGiB %s; ",
                  (unsigned long long)(choice.overshoot_bytes / kGiB), ok ? "ok" : "FAIL");
  }
  {  // flex 300 GiB: PGD overshoot 212/512 too large, PUD fallback
    auto [level, entries] = candidate_entries_flex({0, 300 * kGiB},
                                                   VariantConfig::flex().error_thresholds);
    bool ok = level == Level::kPud && entries.size() == 300;
    if (!ok) pass = false;
    detail += fmt("300GiB@15%%->PUD(%zu)", entries.size());
  }
  return {"A8", pass, detail};
}

// --------------------------------------------------------------------------
// A9: byte-identical outputs

CriterionResult check_a9(const std::string& out_dir, int jobs) {
  auto make = [&](const std::string& sub) {
    RunConfig cfg = base_config("subtb_1g", {"damon-mod", "telescope-bnd", "pmu-agg"}, 7,
                                out_dir + "/" + sub);
    cfg.duration_ms = 4000;
    return cfg;
  };
  auto runs = run_parallel({make("run_a"), make("run_b")}, jobs);
  (void)runs;

  auto listing = [](const fs::path& root) {
    std::vector<fs::path> rel;
    for (const auto& e : fs::recursive_directory_iterator(root))
      if (e.is_regular_file()) rel.push_back(fs::relative(e.path(), root));
    std::sort(rel.begin(), rel.end());
    return rel;
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  };

  fs::path a = fs::path(out_dir) / "run_a", b = fs::path(out_dir) / "run_b";
  auto la = listing(a), lb = listing(b);
  bool pass = la == lb && !la.empty();
  u64 diff_files = 0;
  if (pass)
    for (const auto& rel : la)
      if (slurp(a / rel) != slurp(b / rel)) diff_files++;
  pass = pass && diff_files == 0;
  return {"A9", pass,
          fmt("%zu files compared, %llu differ", la.size(), (unsigned long long)diff_files)};
}

}  // namespace

std::vector<ReproScriptInfo> repro_catalog() {
  std::vector<u64> seeds(std::begin(kSeeds), std::end(kSeeds));
  return {
      {"multi_phase", "multi_phase_5tb", engine_matrix(), seeds, {"A1"}},
      {"subtb", "subtb_1g/10g/100g", engine_matrix(), seeds, {"A2"}},
      {"needle", "needle_5tb", {"telescope-bnd", "telescope-flx", "damon-mod", "damon-agg"}, seeds, {"A3"}},
      {"bitflips", "multi_phase_5tb", {"damon-mod", "damon-agg", "telescope-bnd", "telescope-flx"}, seeds, {"A4"}},
      {"scan_model", "-", {"scan-agg", "scan-mod", "scan-con"}, {1}, {"A5"}},
      {"tiering", "hotspot_2tb", {"telescope-flx", "damon-mod"}, seeds, {"A6"}},
      {"oracle", "-", {}, {1}, {"A7"}},
      {"geometry", "-", {}, {1}, {"A8"}},
      {"determinism", "subtb_1g", {"damon-mod", "telescope-bnd", "pmu-agg"}, {7}, {"A9"}},
  };
}

std::vector<std::string> repro_names() {
  std::vector<std::string> names;
  for (const auto& s : repro_catalog()) names.push_back(s.name);
  names.push_back("all");
  return names;
}

ReproReport run_repro(const std::string& name, const std::string& out_dir, int jobs) {
  auto t0 = std::chrono::steady_clock::now();
  ReproReport rep;
  rep.name = name;
  std::string dir = out_dir + "/" + name;
  if (name == "multi_phase") {
    rep.criteria.push_back(check_a1(dir, jobs));
  } else if (name == "subtb") {
    rep.criteria.push_back(check_a2(dir, jobs));
  } else if (name == "needle") {
    rep.criteria.push_back(check_a3(dir, jobs));
  } else if (name == "bitflips") {
    rep.criteria.push_back(check_a4(dir, jobs));
  } else if (name == "scan_model") {
    rep.criteria.push_back(check_a5(dir, jobs));
  } else if (name == "tiering") {
    rep.criteria.push_back(check_a6(dir, jobs));
  } else if (name == "oracle") {
    rep.criteria.push_back(check_a7(dir, jobs));
  } else if (name == "geometry") {
    rep.criteria.push_back(check_a8(dir, jobs));
  } else if (name == "determinism") {
    rep.criteria.push_back(check_a9(dir, jobs));
  } else {
    std::string known;
    for (const auto& n : repro_names()) known += n + " ";
    throw std::invalid_argument("unknown repro script '" + name + "'; available: " + known);
  }
  rep.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::vector<ReproReport> run_repro_all(const std::string& out_dir, int jobs) {
  std::vector<ReproReport> reports;
  for (const auto& script : repro_catalog())
    reports.push_back(run_repro(script.name, out_dir, jobs));
  return reports;
}

std::string repro_table(const std::vector<ReproReport>& reports) {
  std::string out;
  for (const auto& rep : reports)
    for (const auto& c : rep.criteria)
      out += fmt("%-3s %-4s [%s, %.1fs] %s\n", c.id.c_str(), c.pass ? "PASS" : "FAIL",
                 rep.name.c_str(), rep.elapsed_s, c.details.c_str());
  return out;
}

std::string repro_markdown(const std::vector<ReproReport>& reports) {
  std::string out = "# Reproduction report\n\n| criterion | script | result | details |\n|---|---|---|---|\n";
  for (const auto& rep : reports)
    for (const auto& c : rep.criteria)
      out += "| " + c.id + " | " + rep.name + " | " + (c.pass ? "PASS" : "FAIL") + " | " +
             c.details + " |\n";
  return out;
}

}  // namespace telemsim
