// Command-line front end: run scenarios against telemetry engines, compare
// results, and reproduce the evaluation bundles.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "telemsim/baselines.hpp"
#include "telemsim/harness.hpp"
#include "telemsim/repro.hpp"
#include "telemsim/units.hpp"
#include "telemsim/workload.hpp"

using namespace telemsim;

namespace {

int cmd_run(const std::string& scenario_arg, const std::vector<std::string>& engines, u64 seed,
            const std::string& out, bool tiering, i64 duration_ms, i64 warmup_ms,
            i64 sampling_ms, i64 window_ms) {
  RunConfig cfg;
  if (is_builtin_scenario(scenario_arg))
    cfg.scenario = builtin_scenario(scenario_arg, seed);
  else
    cfg.scenario = load_scenario_file(scenario_arg);
  cfg.scenario.rng_seed = seed;
  cfg.engine_tags = engines;
  cfg.seed = seed;
  cfg.out_dir = out;
  cfg.tiering = tiering;
  cfg.duration_ms = duration_ms;
  if (warmup_ms >= 0) cfg.warmup_ms = warmup_ms;
  cfg.intervals.sampling_interval_ms = sampling_ms;
  cfg.intervals.profile_window_ms = window_ms;

  RunResult result = run(cfg);

  std::printf("run complete: scenario=%s duration=%llds engines=%zu -> %s\n",
              result.scenario.name.c_str(), (long long)(result.duration_ms / 1000),
              result.series.size(), out.c_str());
  for (const auto& row : result.summary)
    std::printf("  %-14s phase %d  precision=%.3f recall=%.3f flips=%llu work=%llu peak_util=%.4f%%\n",
                row.engine.c_str(), row.phase, row.mean_precision, row.mean_recall,
                (unsigned long long)row.bit_flips, (unsigned long long)row.work_units,
                100.0 * row.peak_utilization);
  if (cfg.tiering)
    std::printf("  tiering: migrated=%s steady=%.3g ops/s baseline=%.3g ops/s (x%.2f)\n",
                format_bytes(result.migrated_bytes_total).c_str(), result.steady_ops_per_s,
                result.baseline_ops_per_s, result.steady_ops_per_s / result.baseline_ops_per_s);
  return 0;
}

int cmd_list_scenarios() {
  for (const auto& name : builtin_scenario_names()) {
    Scenario s = builtin_scenario(name, 1);
    u64 hot = 0;
    for (const auto& r : s.phases.front().hot_ranges) hot += r.len();
    std::printf("%-16s heap=%-8s phases=%zu duration=%llds rate=%llu/ms hot[0]=%s\n",
                name.c_str(), format_bytes(s.heap_bytes).c_str(), s.phases.size(),
                (long long)(s.total_ms() / 1000), (unsigned long long)s.accesses_per_ms,
                format_bytes(hot).c_str());
  }
  return 0;
}

int cmd_list_engines() {
  static const char* desc[] = {
      "damon-mod      region sampling, 5 ms interval (40 samples/window)",
      "damon-agg      region sampling, 1 ms interval (200 samples/window)",
      "pmu-mod        hardware event sampling at 5 kHz, 2 MiB blocks",
      "pmu-agg        hardware event sampling at 10 kHz, 2 MiB blocks",
      "telescope-bnd  page-table-tree profiling, entries bounded by the region",
      "telescope-flx  page-table-tree profiling, per-level overshoot thresholds",
      "scan-agg       linear two-pass PTE scan, no throttle sleep",
      "scan-mod       linear two-pass PTE scan, 10 ms sleep per 256 MiB",
      "scan-con       linear two-pass PTE scan, 100 ms sleep per 256 MiB",
  };
  for (const char* d : desc) std::printf("%s\n", d);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"telemsim - tiered-memory telemetry simulator"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "run one scenario against one or more engines");
  std::string scenario, out = "out";
  std::vector<std::string> engines;
  u64 seed = 1;
  bool tiering = false;
  i64 duration_ms = 0, warmup_ms = -1, sampling_ms = 5, window_ms = 200;
  run_cmd->add_option("--scenario", scenario, "builtin scenario name or scenario file path")
      ->required();
  run_cmd->add_option("--engine", engines, "engine tag (repeatable)")->required();
  run_cmd->add_option("--seed", seed, "run seed");
  run_cmd->add_option("--out", out, "output directory");
  run_cmd->add_flag("--tiering", tiering, "enable hot-page migration and throughput modeling");
  run_cmd->add_option("--duration-ms", duration_ms, "override scenario duration");
  run_cmd->add_option("--warmup-ms", warmup_ms, "telemetry start when tiering (default 150000)");
  run_cmd->add_option("--sampling-ms", sampling_ms, "sampling interval (default 5)");
  run_cmd->add_option("--window-ms", window_ms, "profile window (default 200)");

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "compare summary metrics across run directories");
  std::vector<std::string> dirs;
  cmp_cmd->add_option("dirs", dirs, "run output directories")->expected(-2);

  // list
  app.add_subcommand("list-scenarios", "list the builtin scenario catalog");
  app.add_subcommand("list-engines", "list engine tags");

  // repro
  auto* repro_cmd = app.add_subcommand("repro", "run a reproduction bundle and check its criteria");
  std::string repro_name, repro_out = "repro-out";
  int jobs = 2;
  repro_cmd->add_option("name", repro_name, "script name or 'all'")->required();
  repro_cmd->add_option("--out", repro_out, "output directory");
  repro_cmd->add_option("--jobs", jobs, "concurrent scenario runs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed())
      return cmd_run(scenario, engines, seed, out, tiering, duration_ms, warmup_ms, sampling_ms,
                     window_ms);
    if (cmp_cmd->parsed()) {
      std::cout << compare_runs(dirs);
      return 0;
    }
    if (app.get_subcommand("list-scenarios")->parsed()) return cmd_list_scenarios();
    if (app.get_subcommand("list-engines")->parsed()) return cmd_list_engines();
    if (repro_cmd->parsed()) {
      std::vector<ReproReport> reports;
      if (repro_name == "all") {
        reports = run_repro_all(repro_out, jobs);
      } else {
        reports.push_back(run_repro(repro_name, repro_out, jobs));
      }
      std::string table = repro_table(reports);
      std::fputs(table.c_str(), stdout);
      std::filesystem::create_directories(repro_out);
      std::ofstream md(std::filesystem::path(repro_out) / "report.md");
      md << repro_markdown(reports);
      for (const auto& rep : reports)
        if (!rep.all_pass()) return 1;
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
