#include "telemsim/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "telemsim/baselines.hpp"
#include "telemsim/telescope.hpp"

namespace telemsim {

std::vector<std::string> known_engine_tags() {
  return {"damon-mod", "damon-agg", "pmu-mod",  "pmu-agg", "telescope-bnd",
          "telescope-flx", "scan-agg", "scan-mod", "scan-con"};
}

bool is_known_engine_tag(const std::string& tag) {
  auto tags = known_engine_tags();
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

std::unique_ptr<TelemetryEngine> make_engine(const std::string& tag, const Scenario& scenario,
                                             const IntervalConfig& intervals,
                                             const EngineTuning& tuning, u64 engine_seed) {
  IntervalConfig iv = intervals;
  EngineTuning tel_tuning = tuning;
  tel_tuning.region.resolve_warm = true;
  if (tag == "damon-mod") {
    return std::make_unique<RegionSamplingEngine>(tag, scenario, iv, tuning, engine_seed);
  }
  if (tag == "damon-agg") {
    iv.sampling_interval_ms = 1;  // 200 samples per window
    return std::make_unique<RegionSamplingEngine>(tag, scenario, iv, tuning, engine_seed);
  }
  if (tag == "pmu-agg" || tag == "pmu-mod") {
    PmuConfig cfg;
    cfg.sample_freq_hz = (tag == "pmu-agg") ? 10'000 : 5'000;
    return std::make_unique<EventSamplingEngine>(tag, scenario, iv, tuning, cfg, engine_seed);
  }
  if (tag == "telescope-bnd") {
    return std::make_unique<TreeProfilingEngine>(tag, scenario, iv, tel_tuning,
                                                 VariantConfig::bounded(), engine_seed);
  }
  if (tag == "telescope-flx") {
    return std::make_unique<TreeProfilingEngine>(tag, scenario, iv, tel_tuning,
                                                 VariantConfig::flex(), engine_seed);
  }
  if (tag == "scan-agg" || tag == "scan-mod" || tag == "scan-con") {
    ScanMode mode = tag == "scan-agg"   ? ScanMode::kAggressive
                    : tag == "scan-mod" ? ScanMode::kModerate
                                        : ScanMode::kConservative;
    return std::make_unique<LinearScanEngine>(tag, scenario, iv, ScanThrottle::preset(mode));
  }
  throw std::invalid_argument("unknown engine tag '" + tag + "' (--engine)");
}

}  // namespace telemsim
