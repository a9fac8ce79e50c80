#include "telemsim/workload.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace telemsim {

namespace {

constexpr u64 kBatchStreamSalt = 0x6261746368ull;  // distinct stream per purpose

u64 draw_in_ranges(const std::vector<ByteRange>& ranges, u64 total_len, Rng& rng) {
  u64 x = rng.below(total_len);
  for (const auto& r : ranges) {
    if (x < r.len()) return r.start + x;
    x -= r.len();
  }
  return ranges.back().end - 1;  // unreachable for consistent totals
}

u64 hot_total(const Phase& p) {
  u64 t = 0;
  for (const auto& r : p.hot_ranges) t += r.len();
  return t;
}

u64 draw_address(const Scenario& s, const Phase& p, u64 total_hot, Rng& rng) {
  if (p.background_fraction > 0 && rng.chance(p.background_fraction))
    return rng.below(s.heap_bytes);
  switch (p.distribution) {
    case Distribution::kUniformInHot:
      return draw_in_ranges(p.hot_ranges, total_hot, rng);
    case Distribution::kHotspot:
      if (rng.chance(p.hot_op_fraction))
        return draw_in_ranges(p.hot_ranges, total_hot, rng);
      return rng.below(s.heap_bytes);
    case Distribution::kGaussianKeys: {
      u64 nkeys = s.heap_bytes / p.key_bytes;
      double center = static_cast<double>(nkeys) / 2.0;
      double k = center + p.gaussian_std_keys * rng.gaussian();
      i64 key = static_cast<i64>(std::llround(k));
      if (key < 0) key = 0;
      if (key >= static_cast<i64>(nkeys)) key = static_cast<i64>(nkeys) - 1;
      return static_cast<u64>(key) * p.key_bytes + rng.below(p.key_bytes);
    }
  }
  return 0;
}

}  // namespace

const char* distribution_name(Distribution d) {
  switch (d) {
    case Distribution::kUniformInHot: return "uniform_in_hot";
    case Distribution::kGaussianKeys: return "gaussian_keys";
    case Distribution::kHotspot: return "hotspot";
  }
  return "?";
}

Distribution distribution_from_name(const std::string& name) {
  if (name == "uniform_in_hot") return Distribution::kUniformInHot;
  if (name == "gaussian_keys") return Distribution::kGaussianKeys;
  if (name == "hotspot") return Distribution::kHotspot;
  throw std::invalid_argument("unknown distribution '" + name + "' (phases[].distribution)");
}

i64 Scenario::total_ms() const {
  i64 t = 0;
  for (const auto& p : phases) t += p.duration_ms;
  return t;
}

int Scenario::phase_index_at(i64 t_ms) const {
  if (t_ms < 0) return -1;
  i64 t = 0;
  for (size_t i = 0; i < phases.size(); i++) {
    t += phases[i].duration_ms;
    if (t_ms < t) return static_cast<int>(i);
  }
  return -1;
}

const Phase& Scenario::phase_at(i64 t_ms) const {
  int i = phase_index_at(t_ms);
  if (i < 0) throw std::invalid_argument("time outside scenario duration");
  return phases[static_cast<size_t>(i)];
}

i64 Scenario::phase_start_ms(int index) const {
  i64 t = 0;
  for (int i = 0; i < index; i++) t += phases[static_cast<size_t>(i)].duration_ms;
  return t;
}

void Scenario::validate() const {
  if (heap_bytes == 0) throw std::invalid_argument("scenario: heap must be > 0 (heap)");
  if (phases.empty()) throw std::invalid_argument("scenario: needs at least one phase (phases)");
  if (accesses_per_ms == 0)
    throw std::invalid_argument("scenario: access rate must be > 0 (accesses_per_ms)");
  for (size_t i = 0; i < phases.size(); i++) {
    const Phase& p = phases[i];
    if (p.duration_ms <= 0)
      throw std::invalid_argument("scenario: phase duration must be > 0 (phases[].duration_ms)");
    if (p.background_fraction < 0 || p.background_fraction > 1)
      throw std::invalid_argument("scenario: background_fraction outside [0,1]");
    if (p.hot_op_fraction < 0 || p.hot_op_fraction > 1)
      throw std::invalid_argument("scenario: hot_op_fraction outside [0,1]");
    if (p.distribution == Distribution::kGaussianKeys) {
      if (p.key_bytes == 0 || p.key_bytes > heap_bytes)
        throw std::invalid_argument("scenario: gaussian phase needs 0 < key_bytes <= heap (phases[].key_bytes)");
    } else if (p.hot_ranges.empty()) {
      throw std::invalid_argument("scenario: phase needs hot ranges (phases[].hot)");
    }
    RangeSet seen;
    for (const auto& r : p.hot_ranges) {
      if (r.empty() || r.end > heap_bytes)
        throw std::invalid_argument("scenario: hot range outside heap (phases[].hot)");
      if (!seen.add_disjoint(r))
        throw std::invalid_argument("scenario: hot ranges overlap (phases[].hot)");
    }
  }
}

AccessBatch generate_batch(const Scenario& s, i64 t_start_ms, i64 t_end_ms) {
  if (t_end_ms <= t_start_ms)
    throw std::invalid_argument("generate_batch: window must be non-empty");
  if (t_start_ms < 0 || t_end_ms > s.total_ms())
    throw std::invalid_argument("generate_batch: window beyond scenario duration");
  AccessBatch batch;
  batch.t_start_ms = t_start_ms;
  batch.t_end_ms = t_end_ms;
  batch.addrs.reserve(static_cast<size_t>(t_end_ms - t_start_ms) * s.accesses_per_ms);
  for (i64 ms = t_start_ms; ms < t_end_ms; ms++) {
    const Phase& p = s.phase_at(ms);
    u64 total_hot = hot_total(p);
    Rng rng(mix_seed(s.rng_seed, kBatchStreamSalt, static_cast<u64>(ms)));
    for (u64 k = 0; k < s.accesses_per_ms; k++)
      batch.addrs.push_back(draw_address(s, p, total_hot, rng));
  }
  return batch;
}

RangeSet ground_truth_hot(const Scenario& s, i64 t_ms) {
  const Phase& p = s.phase_at(t_ms);
  RangeSet out;
  for (const auto& r : p.hot_ranges) out.add(r);
  return out;
}

std::vector<ByteRange> scatter_hot_islands(u64 heap_bytes, double hot_fraction,
                                           u64 island_bytes, u64 seed) {
  const u64 unit = 2 * kMiB;
  u64 hot_bytes = static_cast<u64>(static_cast<double>(heap_bytes) * hot_fraction);
  u64 count = std::max<u64>(1, hot_bytes / island_bytes);
  u64 island_units = island_bytes / unit;
  u64 stratum_units = heap_bytes / unit / count;
  if (stratum_units < island_units || island_units == 0)
    throw std::invalid_argument("scatter_hot_islands: islands do not fit");
  Rng rng(mix_seed(seed, 0x69736c616e64ull));
  std::vector<ByteRange> out;
  out.reserve(count);
  for (u64 i = 0; i < count; i++) {
    u64 start = (i * stratum_units + rng.below(stratum_units - island_units + 1)) * unit;
    out.push_back({start, start + island_units * unit});
  }
  return out;
}

std::vector<std::string> builtin_scenario_names() {
  return {"multi_phase_5tb", "subtb_1g", "subtb_10g", "subtb_100g",
          "needle_5tb",      "hotspot_2tb", "gaussian_1tb"};
}

bool is_builtin_scenario(const std::string& name) {
  auto names = builtin_scenario_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

Phase uniform_phase(i64 duration_ms, std::vector<ByteRange> hot) {
  Phase p;
  p.duration_ms = duration_ms;
  p.hot_ranges = std::move(hot);
  return p;
}

// 10% hot region placed off-center so region boundaries do not line up with
// it by construction.
Scenario subtb(const std::string& name, u64 heap, u64 seed) {
  u64 hot_len = (heap / 10) & ~(2 * kMiB - 1);
  u64 offset = static_cast<u64>(static_cast<double>(heap) * 0.37) & ~(2 * kMiB - 1);
  Scenario s;
  s.name = name;
  s.heap_bytes = heap;
  s.accesses_per_ms = 6000;
  s.rng_seed = seed;
  s.phases.push_back(uniform_phase(40'000, {{offset, offset + hot_len}}));
  return s;
}

}  // namespace

Scenario builtin_scenario(const std::string& name, u64 seed) {
  Scenario s;
  s.name = name;
  s.rng_seed = seed;
  s.accesses_per_ms = 6000;
  if (name == "multi_phase_5tb") {
    s.heap_bytes = 5 * kTiB;
    s.phases.push_back(uniform_phase(80'000, {{549 * kGiB, 559 * kGiB}}));
    s.phases.push_back(uniform_phase(80'000, {{2341 * kGiB, 2351 * kGiB}}));
    s.phases.push_back(
        uniform_phase(80'000, {{1061 * kGiB, 1071 * kGiB}, {3621 * kGiB, 3631 * kGiB}}));
  } else if (name == "subtb_1g") {
    return subtb(name, kGiB, seed);
  } else if (name == "subtb_10g") {
    return subtb(name, 10 * kGiB, seed);
  } else if (name == "subtb_100g") {
    return subtb(name, 100 * kGiB, seed);
  } else if (name == "needle_5tb") {
    s.heap_bytes = 5 * kTiB;
    s.phases.push_back(uniform_phase(180'000, {{1894 * kGiB, 1894 * kGiB + 50 * kMiB}}));
  } else if (name == "hotspot_2tb") {
    s.heap_bytes = 2 * kTiB;
    // Lower rate than the microbenchmarks: the 1% uniform-background ops
    // must stay below the per-PUD hot threshold or vast cold regions would
    // read as warm.
    s.accesses_per_ms = 2000;
    Phase p;
    p.duration_ms = 240'000;
    p.distribution = Distribution::kHotspot;
    p.hot_op_fraction = 0.99;
    p.hot_ranges = scatter_hot_islands(s.heap_bytes, 0.01, 512 * kMiB, seed);
    s.phases.push_back(std::move(p));
  } else if (name == "gaussian_1tb") {
    u64 keys = 200'000;
    u64 key_bytes = 5 * kMiB;
    s.heap_bytes = keys * key_bytes;
    Phase p;
    p.duration_ms = 120'000;
    p.distribution = Distribution::kGaussianKeys;
    p.gaussian_std_keys = 100;
    p.key_bytes = key_bytes;
    // truth: the +/- 2 sigma key band around the keyspace center
    u64 lo = (keys / 2 - 200) * key_bytes;
    u64 hi = (keys / 2 + 200) * key_bytes;
    p.hot_ranges = {{lo, hi}};
    s.phases.push_back(std::move(p));
  } else {
    throw std::invalid_argument("unknown builtin scenario '" + name + "' (--scenario)");
  }
  return s;
}

namespace {

u64 json_size(const nlohmann::json& v, const char* field) {
  if (v.is_number_unsigned() || v.is_number_integer()) return v.get<u64>();
  if (v.is_string()) return parse_size(v.get<std::string>());
  throw std::invalid_argument(std::string("scenario file: ") + field +
                              " must be a byte count or size string");
}

}  // namespace

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument("scenario file " + path + ": " + e.what());
  }
  Scenario s;
  s.name = j.value("name", std::string("custom"));
  if (!j.contains("heap")) throw std::invalid_argument("scenario file: missing field 'heap'");
  s.heap_bytes = json_size(j.at("heap"), "heap");
  s.accesses_per_ms = j.value("accesses_per_ms", 100ull);
  s.rng_seed = j.value("seed", 1ull);
  if (!j.contains("phases"))
    throw std::invalid_argument("scenario file: missing field 'phases'");
  for (const auto& pj : j.at("phases")) {
    Phase p;
    if (!pj.contains("duration_ms"))
      throw std::invalid_argument("scenario file: missing field 'phases[].duration_ms'");
    p.duration_ms = pj.at("duration_ms").get<i64>();
    p.distribution = distribution_from_name(pj.value("distribution", std::string("uniform_in_hot")));
    p.background_fraction = pj.value("background_fraction", 0.0);
    p.hot_op_fraction = pj.value("hot_op_fraction", 1.0);
    p.gaussian_std_keys = pj.value("gaussian_std_keys", 0.0);
    if (pj.contains("key_bytes")) p.key_bytes = json_size(pj.at("key_bytes"), "phases[].key_bytes");
    if (pj.contains("hot")) {
      for (const auto& hj : pj.at("hot")) {
        u64 start = json_size(hj.at("start"), "phases[].hot[].start");
        u64 len = json_size(hj.at("len"), "phases[].hot[].len");
        p.hot_ranges.push_back({start, start + len});
      }
      std::sort(p.hot_ranges.begin(), p.hot_ranges.end(),
                [](const ByteRange& a, const ByteRange& b) { return a.start < b.start; });
    }
    s.phases.push_back(std::move(p));
  }
  s.validate();
  return s;
}

std::string scenario_to_json(const Scenario& s) {
  nlohmann::json j;
  j["name"] = s.name;
  j["heap"] = s.heap_bytes;
  j["accesses_per_ms"] = s.accesses_per_ms;
  j["seed"] = s.rng_seed;
  j["phases"] = nlohmann::json::array();
  for (const auto& p : s.phases) {
    nlohmann::json pj;
    pj["duration_ms"] = p.duration_ms;
    pj["distribution"] = distribution_name(p.distribution);
    pj["background_fraction"] = p.background_fraction;
    if (p.distribution == Distribution::kHotspot) pj["hot_op_fraction"] = p.hot_op_fraction;
    if (p.distribution == Distribution::kGaussianKeys) {
      pj["gaussian_std_keys"] = p.gaussian_std_keys;
      pj["key_bytes"] = p.key_bytes;
    }
    pj["hot"] = nlohmann::json::array();
    for (const auto& r : p.hot_ranges)
      pj["hot"].push_back({{"start", r.start}, {"len", r.len()}});
    j["phases"].push_back(std::move(pj));
  }
  return j.dump(2);
}

}  // namespace telemsim
