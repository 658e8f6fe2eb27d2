#include <doctest.h>

#include <random>

#include "core/error.hpp"
#include "core/sync.hpp"
#include "oracles.hpp"

using namespace synccensus;

namespace {

Automaton random_automaton(std::mt19937_64& rng, int n, int k) {
  std::vector<Vertex> t(static_cast<std::size_t>(n) * k);
  for (auto& x : t) x = static_cast<Vertex>(rng() % n);
  return Automaton(n, k, t);
}

oracle::Table table_of(const Automaton& a) { return {a.table().begin(), a.table().end()}; }

Automaton cerny_automaton(int n) {
  std::vector<Vertex> t(static_cast<std::size_t>(n) * 2);
  for (int q = 0; q < n; ++q) {
    t[q * 2] = static_cast<Vertex>((q + 1) % n);
    t[q * 2 + 1] = static_cast<Vertex>(q == 0 ? 1 : q);
  }
  return Automaton(n, 2, t);
}

}  // namespace

TEST_CASE("pair test agrees with subset search on random automata") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20000; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    int k = 1 + static_cast<int>(rng() % 3);
    Automaton a = random_automaton(rng, n, k);
    REQUIRE(is_synchronizing(a) == oracle::subset_sync(n, k, table_of(a)));
  }
}

TEST_CASE("shortest reset words are resetting and minimal") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    int k = 1 + static_cast<int>(rng() % 2);
    Automaton a = random_automaton(rng, n, k);
    auto t = table_of(a);
    auto w = shortest_reset_word(a);
    REQUIRE(w.has_value() == oracle::subset_sync(n, k, t));
    if (!w) {
      CHECK_FALSE(reset_threshold(a).has_value());
      continue;
    }
    REQUIRE(apply_word(a, *w).size() == 1);
    REQUIRE(static_cast<int>(w->size()) == oracle::reset_length(n, k, t));
    if (w->size() <= 6 && !w->empty()) REQUIRE_FALSE(oracle::some_word_resets(n, k, t, static_cast<int>(w->size()) - 1));
  }
}

TEST_CASE("Cerny automata reach (n-1)^2") {
  for (int n = 2; n <= 9; ++n) {
    Automaton a = cerny_automaton(n);
    CHECK(is_synchronizing(a));
    CHECK(reset_threshold(a) == (n - 1) * (n - 1));
  }
}

TEST_CASE("reset words prefer lower letters on ties") {
  // Both letters reset in one step; letter 0 comes first.
  Automaton a = Automaton::from_rows({{0, 1}, {0, 1}});
  CHECK(shortest_reset_word(a) == std::vector<int>{0});
  Automaton one = Automaton::from_rows({{0}});
  CHECK(shortest_reset_word(one) == std::vector<int>{});
}

TEST_CASE("permutation automata do not synchronize") {
  Automaton a = Automaton::from_rows({{1, 0}, {0, 1}, {2, 2}});
  CHECK_FALSE(is_synchronizing(a));
  Automaton swap = Automaton::from_rows({{1}, {0}});
  CHECK_FALSE(is_synchronizing(swap));
}

TEST_CASE("subset search is size-limited") {
  std::vector<Vertex> t(21, 0);
  Automaton big(21, 1, t);
  CHECK(is_synchronizing(big));
  try {
    shortest_reset_word(big);
    FAIL("expected size limit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSizeLimit);
  }
}
