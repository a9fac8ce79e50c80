#pragma once

#include <string>
#include <vector>

#include "telemsim/interval_set.hpp"
#include "telemsim/rng.hpp"
#include "telemsim/units.hpp"

namespace telemsim {

enum class Distribution {
  kUniformInHot,  // uniform over the phase's hot ranges
  kGaussianKeys,  // key index ~ N(center, std), key maps to a value extent
  kHotspot,       // hot_op_fraction of ops uniform over hot ranges, rest over heap
};

const char* distribution_name(Distribution d);
Distribution distribution_from_name(const std::string& name);

struct Phase {
  i64 duration_ms = 0;
  std::vector<ByteRange> hot_ranges;  // absolute, disjoint, sorted
  Distribution distribution = Distribution::kUniformInHot;
  // Fraction of accesses drawn uniformly over the whole heap regardless of
  // the distribution. Microbenchmarks run with 0.
  double background_fraction = 0.0;
  // GaussianKeys parameters.
  double gaussian_std_keys = 0.0;
  u64 key_bytes = 0;
  // Hotspot parameter: share of operations that go to the hot ranges.
  double hot_op_fraction = 1.0;
};

struct Scenario {
  std::string name;
  u64 heap_bytes = 0;
  std::vector<Phase> phases;
  u64 accesses_per_ms = 100;
  u64 rng_seed = 1;

  i64 total_ms() const;
  int phase_index_at(i64 t_ms) const;  // -1 if t outside [0, total)
  const Phase& phase_at(i64 t_ms) const;
  i64 phase_start_ms(int index) const;

  void validate() const;  // throws std::invalid_argument naming the field
};

struct AccessBatch {
  i64 t_start_ms = 0;
  i64 t_end_ms = 0;
  std::vector<u64> addrs;
};

// Deterministic: the address stream is derived per whole millisecond from
// (scenario seed, ms index), so any tiling of a run into windows yields the
// same concatenated sequence and batches can be generated from any thread.
AccessBatch generate_batch(const Scenario& s, i64 t_start_ms, i64 t_end_ms);

// The active phase's hot ranges at time t.
RangeSet ground_truth_hot(const Scenario& s, i64 t_ms);

std::vector<std::string> builtin_scenario_names();
bool is_builtin_scenario(const std::string& name);
// Builds a catalog scenario. The seed feeds both the access stream and any
// seed-derived geometry (hotspot island placement).
Scenario builtin_scenario(const std::string& name, u64 seed);

// hot_fraction of `heap` as equally sized islands spread across the heap,
// island placement drawn from `seed`. 2 MiB-aligned, disjoint, sorted.
std::vector<ByteRange> scatter_hot_islands(u64 heap_bytes, double hot_fraction,
                                           u64 island_bytes, u64 seed);

// JSON scenario files, schema documented in the README.
Scenario load_scenario_file(const std::string& path);
std::string scenario_to_json(const Scenario& s);

}  // namespace telemsim
