#include <catch2/catch_amalgamated.hpp>

#include "polar/latency.hpp"

using namespace polar;

namespace {
bool row_at_least(double rate, double threshold) { return rate >= threshold - 1e-9; }
}  // namespace

TEST_CASE("overhead_plain spot values") {
  CHECK(overhead_plain(512, 4) == 1530);
  CHECK(overhead_plain(4, 2) == 3);
  CHECK(overhead_plain(100, 1) == 0);
  CHECK(overhead_plain(7, 1) == 0);
  CHECK_THROWS_AS(overhead_plain(10, 3), ConfigError);
  CHECK_THROWS_AS(overhead_plain(1, 4), ConfigError);
}

TEST_CASE("overhead_regular_md spot values") {
  CHECK(overhead_regular_md(512, 4, 4) == 384);
  CHECK(overhead_regular_md(512, 4, 8) == 192);
  CHECK(overhead_regular_md(512, 4, 1) == overhead_plain(512, 4));
  CHECK_THROWS_AS(overhead_regular_md(512, 4, 0), ConfigError);
}

TEST_CASE("overhead_regular_md non-increasing in m") {
  long prev = overhead_regular_md(200, 8, 1);
  for (std::size_t m = 2; m <= 32; ++m) {
    long cur = overhead_regular_md(200, 8, m);
    CHECK(cur <= prev);
    prev = cur;
  }
}

TEST_CASE("overhead_plain monotone in k and l") {
  for (std::size_t k = 8; k <= 64; ++k)
    CHECK(overhead_plain(k, 4) >= overhead_plain(k - 1, 4));
  for (std::size_t l : {2, 4, 8, 16})
    CHECK(overhead_plain(64, l) >= overhead_plain(64, l / 2));
}

TEST_CASE("overhead_irregular spot values") {
  CHECK(overhead_irregular(10, 4) == 24);
  CHECK(overhead_irregular(2, 4) == 0);
  CHECK(overhead_irregular(1, 2) == 0);
  CHECK_THROWS_AS(overhead_irregular(1, 4), ConfigError);
}

TEST_CASE("plcas bounds") {
  auto b = plcas_bounds(512, 4);
  CHECK(b.lower == 3);
  CHECK(b.upper == 1530);
  auto one = plcas_bounds(100, 1);
  CHECK(one.lower == 0);
  CHECK(one.upper == 0);
  for (std::size_t k : {4, 16, 100})
    for (std::size_t l : {1, 2, 4}) {
      auto bb = plcas_bounds(k, l);
      CHECK(bb.lower <= bb.upper);
    }
}

TEST_CASE("overhead_adaptive profile sums") {
  CHECK(overhead_adaptive({}) == 0);
  CHECK(overhead_adaptive({4, 4, 4}) == 9);
  CHECK(overhead_adaptive({4, 1, 1, 1}) == 3);
  CHECK_THROWS_AS(overhead_adaptive({4, 0}), ConfigError);
  // constant profile of l over the plain epoch count reduces to Eq.-style form
  std::vector<int> profile(510, 4);
  CHECK(overhead_adaptive(profile) == overhead_plain(512, 4));
}

TEST_CASE("fig4 sweep properties at n=1024, l=4") {
  std::vector<double> rates = {0.1, 0.25, 0.375, 0.5, 0.625, 0.75, 0.9};
  auto rows = fig4_table(1024, 4, rates,
                         {Scheme::plain, Scheme::multidecision, Scheme::irregular}, 4);
  REQUIRE(rows.size() == rates.size() * 3);

  long prev_plain = -1;
  for (const auto& row : rows) {
    if (row.scheme == Scheme::plain) {
      CHECK(row.overhead_cycles > prev_plain);  // strictly increasing in rate
      prev_plain = row.overhead_cycles;
    }
  }
  for (std::size_t i = 0; i < rows.size(); i += 3) {
    const auto& plain = rows[i];
    const auto& md = rows[i + 1];
    const auto& irr = rows[i + 2];
    CHECK(md.overhead_cycles <= plain.overhead_cycles);
    CHECK(irr.overhead_cycles <= plain.overhead_cycles);
    // S grows much slower than k, so grouping by constituent code wins over
    // fixed 4-bit grouping once the code carries enough information bits. At
    // the lowest rates the BEC construction fragments the mask enough that
    // the 4-bit curve is cheaper, so the comparison starts at rate 0.375.
    if (row_at_least(rows[i].rate, 0.375)) CHECK(irr.overhead_cycles <= md.overhead_cycles);
  }
}

TEST_CASE("fig4 rows for l=1 are all zero") {
  for (const auto& row : fig4_table(256, 1, {0.25, 0.5, 0.75}, {Scheme::plain}))
    CHECK(row.overhead_cycles == 0);
}
