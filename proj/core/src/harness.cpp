#include "telemsim/harness.hpp"

#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace telemsim {

namespace {

namespace fs = std::filesystem;

class CsvFile {
 public:
  CsvFile() = default;
  CsvFile(const fs::path& path, const char* header) {
    out_.open(path);
    if (!out_) throw std::runtime_error("cannot open output file: " + path.string());
    out_ << header << '\n';
  }
  void linef(const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    out_ << buf << '\n';
  }
  void raw(const std::string& s) { out_ << s; }
  bool is_open() const { return out_.is_open(); }

 private:
  std::ofstream out_;
};

struct EngineOutputs {
  CsvFile pr, cost, regions, reports;
  HeatmapGrid heatmap{1, 1, 1, 1};
};

i64 gcd_i64(i64 a, i64 b) { return b == 0 ? a : gcd_i64(b, a % b); }

}  // namespace

void RunConfig::validate() const {
  scenario.validate();
  intervals.validate();
  if (engine_tags.empty()) throw std::invalid_argument("run config: no engines given (--engine)");
  std::set<std::string> seen;
  for (const auto& tag : engine_tags) {
    if (!is_known_engine_tag(tag))
      throw std::invalid_argument("unknown engine tag '" + tag + "' (--engine)");
    if (!seen.insert(tag).second)
      throw std::invalid_argument("duplicate engine tag '" + tag + "' (--engine)");
  }
  i64 dur = duration_ms == 0 ? scenario.total_ms() : duration_ms;
  if (dur < intervals.profile_window_ms)
    throw std::invalid_argument("run config: duration shorter than one profile window (--duration-ms)");
  if (tiering && warmup_ms >= dur)
    throw std::invalid_argument("run config: warmup consumes the whole run (--warmup-ms)");
  if (tiering) tier.validate();
}

const EngineSeries* RunResult::series_for(const std::string& tag) const {
  for (const auto& es : series)
    if (es.engine == tag) return &es;
  return nullptr;
}

RunResult run(const RunConfig& config) {
  config.validate();
  const Scenario& scenario = config.scenario;

  i64 window_ms = config.intervals.profile_window_ms;
  i64 duration_ms = config.duration_ms == 0 ? scenario.total_ms() : config.duration_ms;
  duration_ms = std::min<i64>(duration_ms, scenario.total_ms());
  i64 windows = duration_ms / window_ms;

  std::vector<std::unique_ptr<TelemetryEngine>> engines;
  engines.reserve(config.engine_tags.size());
  for (const auto& tag : config.engine_tags)
    engines.push_back(make_engine(tag, scenario, config.intervals, config.tuning,
                                  mix_seed(config.seed, hash_str(tag.c_str()))));

  i64 tick_ms = window_ms;
  for (const auto& e : engines) {
    if (window_ms % e->sampling_interval_ms() != 0)
      throw std::invalid_argument("engine '" + e->tag() +
                                  "': sampling interval does not divide the profile window");
    tick_ms = gcd_i64(tick_ms, e->sampling_interval_ms());
  }

  // Telemetry start: with tiering on, the warmup period runs untouched and
  // only the throughput baseline is observed.
  i64 telemetry_start_ms = 0;
  if (config.tiering) telemetry_start_ms = (config.warmup_ms / window_ms) * window_ms;

  RunResult result;
  result.scenario = scenario;
  result.duration_ms = windows * window_ms;
  result.series.resize(engines.size());
  for (size_t i = 0; i < engines.size(); i++) result.series[i].engine = engines[i]->tag();

  // Output files.
  const bool writing = !config.out_dir.empty();
  fs::path scen_dir;
  std::vector<EngineOutputs> outs(engines.size());
  CsvFile migration_csv, throughput_csv;
  if (writing) {
    scen_dir = fs::path(config.out_dir) / scenario.name;
    fs::create_directories(scen_dir);
    for (size_t i = 0; i < engines.size(); i++) {
      fs::path dir = scen_dir / engines[i]->tag();
      fs::create_directories(dir);
      outs[i].pr = CsvFile(dir / "pr.csv", "t_ms,engine,precision,recall");
      outs[i].cost = CsvFile(dir / "cost.csv", "t_ms,engine,bit_flips,work_units,samples,interrupts");
      outs[i].regions = CsvFile(dir / "regions.csv", "t_ms,start,end,access_count,age,score");
      outs[i].reports = CsvFile(dir / "reports.csv", "t_ms,engine,range_start,range_end,score");
      outs[i].heatmap = HeatmapGrid(result.duration_ms, scenario.heap_bytes,
                                    config.heatmap_time_buckets, config.heatmap_addr_buckets);
    }
    std::ofstream cfg_echo(scen_dir / "scenario.json");
    cfg_echo << scenario_to_json(scenario) << '\n';
    if (config.tiering) {
      migration_csv = CsvFile(scen_dir / "migration.csv", "t_ms,range_start,range_end,bytes,score");
      throughput_csv = CsvFile(scen_dir / "throughput.csv", "t_ms,engine,ops_per_s,near_bytes");
    }
  } else {
    for (size_t i = 0; i < engines.size(); i++)
      outs[i].heatmap = HeatmapGrid(result.duration_ms, scenario.heap_bytes,
                                    config.heatmap_time_buckets, config.heatmap_addr_buckets);
  }

  Placement placement;  // tiering state; data starts on the far tier
  const std::string& driver_tag = config.engine_tags.front();

  LevelIndexSets sets;
  AccessBatch batch;
  double steady_sum = 0;
  u64 steady_n = 0;
  i64 steady_from_ms = result.duration_ms - result.duration_ms / 4;

  for (i64 w = 0; w < windows; w++) {
    i64 w_start = w * window_ms;
    i64 w_end = w_start + window_ms;
    bool telemetry = w_start >= telemetry_start_ms;

    u64 near_hits = 0, total_accesses = 0;

    for (i64 t = w_start; t < w_end; t += tick_ms) {
      batch = generate_batch(scenario, t, t + tick_ms);
      if (telemetry) {
        sets.build(batch.addrs);
        for (auto& e : engines)
          if (t % e->sampling_interval_ms() == 0) e->begin_interval(t);
        for (auto& e : engines) e->observe_batch(batch, sets);
        for (auto& e : engines)
          if ((t + tick_ms) % e->sampling_interval_ms() == 0) e->end_interval(t + tick_ms);
      }
      if (config.tiering) {
        total_accesses += batch.addrs.size();
        for (u64 a : batch.addrs)
          if (placement.is_near(a)) near_hits++;
      }
    }

    if (telemetry) {
      RangeSet truth = ground_truth_hot(scenario, w_start);
      for (size_t i = 0; i < engines.size(); i++) {
        EngineReport rep = engines[i]->end_window(w_start, w_end);
        WindowStats stats;
        stats.t_start_ms = w_start;
        stats.t_end_ms = w_end;
        stats.pr = precision_recall(hot_ranges_only(rep), truth);
        stats.pr.t_ms = w_end;
        stats.cost = rep.cost;
        stats.covered_bytes = rep.covered_bytes;
        for (const auto& sr : rep.hot_ranges) stats.reported_bytes += sr.range.len();
        result.series[i].windows.push_back(stats);

        outs[i].heatmap.accumulate(rep);
        if (writing) {
          outs[i].pr.linef("%lld,%s,%.6g,%.6g", (long long)w_end, engines[i]->tag().c_str(),
                           stats.pr.precision, stats.pr.recall_defined ? stats.pr.recall : 0.0);
          outs[i].cost.linef("%lld,%s,%llu,%llu,%llu,%llu", (long long)w_end,
                             engines[i]->tag().c_str(), (unsigned long long)rep.cost.bit_flips,
                             (unsigned long long)rep.cost.work_units,
                             (unsigned long long)rep.cost.samples_taken,
                             (unsigned long long)rep.cost.interrupts);
          for (const auto& row : rep.regions)
            outs[i].regions.linef("%lld,%llu,%llu,%u,%u,%u", (long long)w_end,
                                  (unsigned long long)row.range.start,
                                  (unsigned long long)row.range.end, row.access_count, row.age,
                                  row.score);
          for (const auto& sr : rep.hot_ranges)
            outs[i].reports.linef("%lld,%s,%llu,%llu,%.6g", (long long)w_end,
                                  engines[i]->tag().c_str(), (unsigned long long)sr.range.start,
                                  (unsigned long long)sr.range.end, sr.score);
        }

        if (config.tiering && engines[i]->tag() == driver_tag) {
          placement.update_scores(rep);
          MigrationPlan plan = classify_and_plan(rep, placement, config.policy);
          apply_plan(plan, &placement, config.tier);
          for (const auto& item : plan.items) {
            result.migrated_bytes_total += item.range.len();
            if (writing)
              migration_csv.linef("%lld,%llu,%llu,%llu,%.6g", (long long)w_end,
                                  (unsigned long long)item.range.start,
                                  (unsigned long long)item.range.end,
                                  (unsigned long long)item.range.len(), item.score);
          }
        }
      }
    }

    if (config.tiering && total_accesses > 0) {
      double total_ns =
          static_cast<double>(near_hits) * config.tier.near_latency_ns +
          static_cast<double>(total_accesses - near_hits) * config.tier.far_latency_ns;
      double ops = 1e9 / (total_ns / static_cast<double>(total_accesses));
      result.throughput.push_back({w_end, ops, placement.near_bytes()});
      if (writing)
        throughput_csv.linef("%lld,%s,%.6g,%llu", (long long)w_end, driver_tag.c_str(), ops,
                             (unsigned long long)placement.near_bytes());
      if (w_start >= steady_from_ms) {
        steady_sum += ops;
        steady_n++;
      }
    }
  }

  result.baseline_ops_per_s = 1e9 / config.tier.far_latency_ns;
  result.steady_ops_per_s = steady_n ? steady_sum / static_cast<double>(steady_n) : 0.0;
  result.summary = summarize(scenario, result.series);

  if (writing) {
    CsvFile summary_csv(scen_dir / "summary.csv",
                        "engine,phase,mean_precision,mean_recall,bit_flips,work_units");
    for (const auto& row : result.summary)
      summary_csv.linef("%s,%d,%.6g,%.6g,%llu,%llu", row.engine.c_str(), row.phase,
                        row.mean_precision, row.mean_recall, (unsigned long long)row.bit_flips,
                        (unsigned long long)row.work_units);
    for (size_t i = 0; i < engines.size(); i++) {
      std::ofstream hm(scen_dir / engines[i]->tag() / "heatmap.csv");
      hm << outs[i].heatmap.to_csv();
    }
  }
  return result;
}

namespace {

struct SummaryFile {
  std::string scenario;
  // (engine, phase) -> metric columns
  std::map<std::pair<std::string, int>, std::array<std::string, 4>> rows;
};

SummaryFile read_summary(const std::string& run_dir) {
  namespace fs = std::filesystem;
  SummaryFile out;
  fs::path root(run_dir);
  if (!fs::exists(root)) throw std::runtime_error("compare: no such directory: " + run_dir);
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    if (!fs::exists(entry.path() / "summary.csv")) continue;
    if (!out.scenario.empty())
      throw std::runtime_error("compare: multiple scenarios under " + run_dir);
    out.scenario = entry.path().filename().string();
    std::ifstream in(entry.path() / "summary.csv");
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      std::stringstream ss(line);
      std::string engine, phase, prec, rec, flips, work;
      std::getline(ss, engine, ',');
      std::getline(ss, phase, ',');
      std::getline(ss, prec, ',');
      std::getline(ss, rec, ',');
      std::getline(ss, flips, ',');
      std::getline(ss, work, ',');
      out.rows[{engine, std::stoi(phase)}] = {prec, rec, flips, work};
    }
  }
  if (out.scenario.empty())
    throw std::runtime_error("compare: no summary.csv found under " + run_dir + " (expected <dir>/<scenario>/summary.csv)");
  return out;
}

}  // namespace

std::string compare_runs(const std::vector<std::string>& run_dirs) {
  if (run_dirs.size() < 2) throw std::invalid_argument("compare: need at least two run directories");
  std::vector<SummaryFile> files;
  files.reserve(run_dirs.size());
  for (const auto& d : run_dirs) files.push_back(read_summary(d));
  for (size_t i = 1; i < files.size(); i++)
    if (files[i].scenario != files[0].scenario)
      throw std::runtime_error("compare: scenario mismatch: '" + files[0].scenario + "' (" +
                               run_dirs[0] + ") vs '" + files[i].scenario + "' (" + run_dirs[i] +
                               ")");

  static const char* metric_names[4] = {"mean_precision", "mean_recall", "bit_flips", "work_units"};
  std::string out = "scenario,engine,phase,metric";
  for (const auto& d : run_dirs) out += "," + d;
  if (run_dirs.size() == 2) out += ",delta";
  out += "\n";

  for (const auto& [key, base_vals] : files[0].rows) {
    bool everywhere = true;
    for (size_t i = 1; i < files.size(); i++)
      if (!files[i].rows.count(key)) everywhere = false;
    if (!everywhere) continue;
    for (int m = 0; m < 4; m++) {
      out += files[0].scenario + "," + key.first + "," + std::to_string(key.second) + "," +
             metric_names[m];
      for (const auto& f : files) out += "," + f.rows.at(key)[static_cast<size_t>(m)];
      if (files.size() == 2) {
        double a = std::stod(files[0].rows.at(key)[static_cast<size_t>(m)]);
        double b = std::stod(files[1].rows.at(key)[static_cast<size_t>(m)]);
        char buf[32];
        std::snprintf(buf, sizeof buf, ",%.6g", b - a);
        out += buf;
      }
      out += "\n";
    }
  }
  return out;
}

}  // namespace telemsim
