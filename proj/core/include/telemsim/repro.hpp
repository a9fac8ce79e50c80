#pragma once

#include <string>
#include <vector>

#include "telemsim/units.hpp"

namespace telemsim {

struct CriterionResult {
  std::string id;       // A1..A9
  bool pass = false;
  std::string details;  // measured values vs thresholds
};

struct ReproScriptInfo {
  std::string name;
  std::string scenario;               // "-" for analytic scripts
  std::vector<std::string> engines;
  std::vector<u64> seeds;
  std::vector<std::string> criteria;  // ids this script decides
};

// Catalog of reproduction scripts; every criterion id appears in exactly one.
std::vector<ReproScriptInfo> repro_catalog();
std::vector<std::string> repro_names();

struct ReproReport {
  std::string name;
  std::vector<CriterionResult> criteria;
  double elapsed_s = 0;

  bool all_pass() const {
    for (const auto& c : criteria)
      if (!c.pass) return false;
    return true;
  }
};

// Runs one script (or "all"). Statistical criteria run every listed seed and
// are judged on the median. Run artifacts land under out_dir/<script>/.
// jobs > 1 runs a script's scenario runs concurrently.
ReproReport run_repro(const std::string& name, const std::string& out_dir, int jobs = 2);
std::vector<ReproReport> run_repro_all(const std::string& out_dir, int jobs = 2);

// One line per criterion: "A1 PASS  <details>".
std::string repro_table(const std::vector<ReproReport>& reports);
std::string repro_markdown(const std::vector<ReproReport>& reports);

}  // namespace telemsim
