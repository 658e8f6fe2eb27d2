#include <doctest.h>

#include <random>

#include "core/analysis.hpp"
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

}  // namespace

TEST_CASE("strong connectivity and period agree with closure-based oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    int k = 1 + static_cast<int>(rng() % 3);
    Digraph d = random_digraph(rng, n, k);
    auto rows = d.rows();
    bool sc = oracle::strongly_connected(rows);
    REQUIRE(is_strongly_connected(d) == sc);
    REQUIRE((decompose_scc(d).components.size() == 1) == sc);
    if (sc) {
      REQUIRE(cycle_gcd(d) == oracle::period(rows));
      REQUIRE(is_aperiodic(d) == (oracle::period(rows) == 1));
    } else {
      REQUIRE_THROWS_AS(cycle_gcd(d), Error);
    }
    REQUIRE(is_primitive(d) == oracle::primitive(rows));
  }
}

TEST_CASE("scc decomposition matches mutual reachability") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + static_cast<int>(rng() % 9);
    Digraph d = random_digraph(rng, n, 1 + static_cast<int>(rng() % 2));
    auto reach = oracle::closure(d.rows());
    SccDecomposition s = decompose_scc(d);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        bool same = reach[u][v] && reach[v][u];
        REQUIRE((s.component_of[u] == s.component_of[v]) == same);
      }
    }
    // A sink component reaches nothing outside itself.
    for (int c : s.sink_components) {
      for (int u : s.components[c]) {
        for (int v = 0; v < n; ++v) {
          if (reach[u][v]) REQUIRE(s.component_of[v] == c);
        }
      }
    }
    // reachable[c]: every vertex reaches component c
    for (std::size_t c = 0; c < s.components.size(); ++c) {
      int v = s.components[c].front();
      bool all = true;
      for (int u = 0; u < n; ++u) all = all && reach[u][v];
      REQUIRE(s.reachable[c] == all);
    }
  }
}

TEST_CASE("small fixed digraphs") {
  Digraph two_cycle = Digraph::from_rows(2, 1, {{1}, {0}});
  CHECK(is_strongly_connected(two_cycle));
  CHECK(cycle_gcd(two_cycle) == 2);
  CHECK_FALSE(is_aperiodic(two_cycle));
  CHECK_FALSE(is_primitive(two_cycle));

  Digraph loop = Digraph::from_rows(1, 1, {{0}});
  CHECK(is_primitive(loop));

  CHECK(is_primitive(g30()));
  CHECK(is_primitive(cerny_digraph(5)));
}

TEST_CASE("sink reduction") {
  // 0 -> {1, 2}, and {1, 2} is a primitive sink.
  Digraph d = Digraph::from_rows(3, 2, {{1, 2}, {1, 2}, {1, 1}});
  auto r = sink_reduction(d);
  REQUIRE(r.has_value());
  CHECK(r->vertex_map == std::vector<int>{1, 2});
  CHECK(r->induced == Digraph::from_rows(2, 2, {{0, 1}, {0, 0}}));

  Digraph two_sinks = Digraph::from_rows(3, 1, {{1}, {1}, {2}});
  CHECK_FALSE(sink_reduction(two_sinks).has_value());
  CHECK(decompose_scc(two_sinks).sink_components.size() == 2);
}
