#include <doctest.h>

#include <random>
#include <set>

#include "core/census.hpp"
#include "core/constructions.hpp"
#include "core/error.hpp"
#include "oracles.hpp"

using namespace synccensus;

namespace {

Digraph random_digraph(std::mt19937_64& rng, int n, int k) {
  std::vector<std::vector<int>> rows(n, std::vector<int>(k));
  for (auto& r : rows) {
    for (int& w : r) w = static_cast<int>(rng() % n);
    std::sort(r.begin(), r.end());
  }
  return Digraph::from_rows(n, k, rows);
}

void check_against_naive(const Digraph& d) {
  const auto rows = d.rows();
  const u128 naive = oracle::naive_sync_colorings(rows);
  CensusOptions full;
  full.mode = CensusMode::kFull;
  CensusResult f = census(d, full);
  CensusResult r = census(d);
  REQUIRE(f.sync_colorings == naive);
  REQUIRE(r.sync_colorings == naive);
  REQUIRE(f == r);
  u128 total = 1;
  for (int v = 0; v < d.n(); ++v) total *= factorial(d.k());
  REQUIRE(f.total_colorings == total);
  REQUIRE(f.distinct_automata * f.weight == total);
  REQUIRE(f.sync_automata * f.weight == f.sync_colorings);
  REQUIRE(is_totally_synchronizing(d) == (naive == total));
}

}  // namespace

TEST_CASE("census equals the edge-labeled brute force on every small labeled digraph") {
  for (auto [n, k] : {std::pair{1, 1}, {2, 1}, {2, 2}, {3, 2}, {2, 3}, {3, 3}}) {
    CAPTURE(n);
    CAPTURE(k);
    oracle::for_each_labeled(n, k, [&](const oracle::Rows& rows) { check_against_naive(Digraph::from_rows(n, k, rows)); });
  }
}

TEST_CASE("census equals the brute force on random digraphs up to n = 4, k = 3") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    int k = 1 + static_cast<int>(rng() % 3);
    check_against_naive(random_digraph(rng, n, k));
  }
}

TEST_CASE("distinct automata are enumerated exactly once") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    int k = 1 + static_cast<int>(rng() % 3);
    Digraph d = random_digraph(rng, n, k);
    std::set<std::vector<Vertex>> seen;
    std::uint64_t calls = 0;
    enumerate_distinct_automata(d, [&](const Automaton& a) {
      ++calls;
      seen.insert({a.table().begin(), a.table().end()});
      REQUIRE(digraph_of_automaton(a) == d);
    });
    REQUIRE(seen.size() == calls);
    REQUIRE(u128{calls} == distinct_automata_count(d));
    REQUIRE(ColoringSpace(d).size() == distinct_automata_count(d));
  }
}

TEST_CASE("coloring weight") {
  Digraph d = Digraph::from_rows(2, 3, {{0, 0, 0}, {0, 1, 1}});
  CHECK(coloring_weight(d) == 6 * 2);
  CHECK(distinct_automata_count(d) == 1 * 3);
  CHECK(free_action_pivot(d) == std::nullopt);
  CHECK(free_action_pivot(g30()) == 0);
}

TEST_CASE("G30 has 30 synchronizing colorings of 64") {
  CensusResult r = census(g30());
  CHECK(r.sync_colorings == 30);
  CHECK(r.total_colorings == 64);
  CHECK(r.ratio() == Rational(30, 64));
  CHECK_FALSE(r.totally_synchronizing());
}

TEST_CASE("census JSON carries exact decimal strings") {
  std::string j = census_to_json(census(g30()));
  CHECK(j.find("\"sync_colorings\":\"30\"") != std::string::npos);
  CHECK(j.find("\"ratio\":\"15/32\"") != std::string::npos);
}

TEST_CASE("budget caps the automata checked") {
  CensusOptions o;
  o.budget = 10;
  try {
    census(g30(), o);
    FAIL("expected budget error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBudget);
  }
}

TEST_CASE("sink reduction preserves the ratio") {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int trial = 0; trial < 600; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    int k = 1 + static_cast<int>(rng() % 2);
    Digraph d = random_digraph(rng, n, k);
    CensusResult direct = census(d);
    CensusResult via = count_via_sink(d);
    REQUIRE(via.ratio() == direct.ratio());
    REQUIRE(via.total_colorings == direct.total_colorings);
    REQUIRE(via.sync_colorings == direct.sync_colorings);
    ++checked;
  }
  CHECK(checked == 600);
  // Two sinks: nothing synchronizes.
  Digraph two = Digraph::from_rows(3, 2, {{1, 2}, {1, 1}, {2, 2}});
  CHECK(count_via_sink(two).sync_colorings == 0);
  CHECK(census(two).sync_colorings == 0);
}

TEST_CASE("a permutation digraph never synchronizes") {
  Digraph two_cycle = Digraph::from_rows(2, 1, {{1}, {0}});
  CensusResult r = census(two_cycle);
  CHECK(r.sync_colorings == 0);
  CHECK(r.total_colorings == 1);
}

TEST_CASE("worker count does not change the census") {
  CensusOptions one, four;
  four.workers = 4;
  Digraph d = cerny_digraph(7);
  CHECK(census(d, one) == census(d, four));
}
