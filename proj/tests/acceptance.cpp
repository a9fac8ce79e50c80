// Acceptance suite: runs every reproduction bundle and requires every
// criterion to hold at its stated threshold. One PASS/FAIL line per
// criterion goes to stdout; the doctest assertion keeps ctest honest.
//
// The full suite executes terabyte-scale scenario runs and takes several
// minutes on two cores.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <set>
#include <thread>

#include "telemsim/repro.hpp"

using namespace telemsim;

namespace {

std::string accept_dir() {
  auto dir = std::filesystem::temp_directory_path() / "telemsim_acceptance";
  std::filesystem::remove_all(dir);
  return dir.string();
}

int jobs() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw >= 2 ? 2 : 1;
}

}  // namespace

TEST_CASE("every criterion id is owned by exactly one repro script") {
  std::set<std::string> seen;
  for (const auto& script : repro_catalog())
    for (const auto& id : script.criteria) REQUIRE(seen.insert(id).second);
  for (const char* id : {"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9"})
    CHECK(seen.count(id) == 1);
}

TEST_CASE("acceptance criteria") {
  const std::string out = accept_dir();
  const int j = jobs();

  // Cheap analytic/oracle criteria first, then the scenario bundles.
  for (const char* script : {"scan_model", "oracle", "geometry", "determinism", "subtb",
                             "needle", "tiering", "bitflips", "multi_phase"}) {
    ReproReport rep = run_repro(script, out, j);
    for (const auto& c : rep.criteria) {
      std::printf("%s %s  [%s] %s\n", c.id.c_str(), c.pass ? "PASS" : "FAIL", script,
                  c.details.c_str());
      std::fflush(stdout);
      CHECK_MESSAGE(c.pass, c.id, ": ", c.details);
    }
  }
}
