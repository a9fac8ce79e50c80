#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "telemsim/interval_set.hpp"
#include "telemsim/rng.hpp"
#include "telemsim/units.hpp"

using namespace telemsim;

TEST_CASE("parse_size handles suffixes and rejects garbage") {
  CHECK(parse_size("512") == 512);
  CHECK(parse_size("4KiB") == 4096);
  CHECK(parse_size("10 GiB") == 10 * kGiB);
  CHECK(parse_size("5TiB") == 5 * kTiB);
  CHECK(parse_size("2 MB") == 2 * kMiB);
  CHECK_THROWS_AS(parse_size("ten"), std::invalid_argument);
  CHECK_THROWS_AS(parse_size("5 parsecs"), std::invalid_argument);
  CHECK_THROWS_AS(parse_size("5 GiB extra"), std::invalid_argument);
}

TEST_CASE("format_bytes picks the exact unit") {
  CHECK(format_bytes(50 * kMiB) == "50 MiB");
  CHECK(format_bytes(5 * kTiB) == "5 TiB");
  CHECK(format_bytes(4096) == "4 KiB");
  CHECK(format_bytes(123) == "123 B");
}

TEST_CASE("range set add coalesces adjacent and overlapping ranges") {
  RangeSet s;
  s.add({0, kGiB});
  s.add({kGiB, 2 * kGiB});
  CHECK(s.size() == 1);
  CHECK(s.ranges()[0] == ByteRange{0, 2 * kGiB});

  s.add({5 * kGiB, 6 * kGiB});
  s.add({kGiB, 5 * kGiB + 1});
  CHECK(s.size() == 1);
  CHECK(s.total_bytes() == 6 * kGiB);
}

TEST_CASE("range set add_disjoint refuses overlap, allows adjacency") {
  RangeSet s;
  CHECK(s.add_disjoint({100, 200}));
  CHECK_FALSE(s.add_disjoint({150, 160}));
  CHECK(s.add_disjoint({200, 300}));
  CHECK(s.size() == 1);
}

TEST_CASE("range set subtract splits in place") {
  RangeSet s;
  s.add({0, 100});
  s.subtract({40, 60});
  REQUIRE(s.size() == 2);
  CHECK(s.ranges()[0] == ByteRange{0, 40});
  CHECK(s.ranges()[1] == ByteRange{60, 100});
  CHECK(s.total_bytes() == 80);
}

// Model-based check against a bitmap over a small domain.
TEST_CASE("range set matches a brute-force bitmap under random ops") {
  Rng rng(99);
  const u64 domain = 512;
  RangeSet s;
  std::set<u64> model;
  for (int op = 0; op < 2000; op++) {
    u64 a = rng.below(domain);
    u64 b = a + 1 + rng.below(32);
    if (b > domain) b = domain;
    if (rng.chance(0.6)) {
      s.add({a, b});
      for (u64 x = a; x < b; x++) model.insert(x);
    } else {
      s.subtract({a, b});
      for (u64 x = a; x < b; x++) model.erase(x);
    }
    REQUIRE(s.total_bytes() == model.size());
  }
  for (u64 x = 0; x < domain; x++) CHECK(s.contains(x) == (model.count(x) > 0));
  // disjoint, sorted, non-adjacent representation
  for (size_t i = 1; i < s.ranges().size(); i++)
    CHECK(s.ranges()[i - 1].end < s.ranges()[i].start);
}

TEST_CASE("overlap_bytes agrees with pointwise counting") {
  Rng rng(7);
  const u64 domain = 256;
  RangeSet s;
  for (int i = 0; i < 10; i++) {
    u64 a = rng.below(domain);
    s.add({a, std::min(domain, a + 1 + rng.below(20))});
  }
  for (int trial = 0; trial < 100; trial++) {
    u64 a = rng.below(domain);
    ByteRange q{a, std::min(domain, a + 1 + rng.below(64))};
    u64 expect = 0;
    for (u64 x = q.start; x < q.end; x++)
      if (s.contains(x)) expect++;
    CHECK(s.overlap_bytes(q) == expect);
  }
}

TEST_CASE("rng below is deterministic and in range") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; i++) {
    u64 x = a.below(1000);
    CHECK(x == b.below(1000));
    CHECK(x < 1000);
  }
}

TEST_CASE("geometric skip matches bernoulli thinning rate") {
  Rng rng(5);
  const double p = 0.01;
  const u64 n = 2'000'000;
  u64 taken = 0, idx = rng.geometric_skip(p);
  while (idx < n) {
    taken++;
    idx += 1 + rng.geometric_skip(p);
  }
  double rate = static_cast<double>(taken) / static_cast<double>(n);
  CHECK(rate == doctest::Approx(p).epsilon(0.05));
}
