#include <doctest.h>

#include <map>
#include <numeric>
#include <random>

#include "core/canonical.hpp"
#include "core/constructions.hpp"
#include "core/error.hpp"
#include "oracles.hpp"

using namespace synccensus;

namespace {

std::vector<int> random_perm(std::mt19937_64& rng, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Keys partition labeled digraphs exactly as the n! brute force does.
void check_partition(int n, int k) {
  std::map<std::vector<int>, std::string> by_oracle;
  std::map<std::string, std::vector<int>> by_key;
  oracle::for_each_labeled(n, k, [&](const oracle::Rows& rows) {
    Digraph d = Digraph::from_rows(n, k, rows);
    CanonicalForm f = canonical_form(d);
    std::string key(canonical_key(d).bytes());
    std::vector<int> brute = oracle::canonical(rows);
    auto [it, fresh] = by_oracle.emplace(brute, key);
    REQUIRE(it->second == key);
    auto [jt, fresh_key] = by_key.emplace(key, brute);
    REQUIRE(jt->second == brute);
    REQUIRE(f.automorphisms == oracle::automorphisms(rows));
    REQUIRE(relabel(d, f.labeling) == f.digraph);
    REQUIRE(oracle::canonical(f.digraph.rows()) == brute);
  });
  CHECK(by_oracle.size() == by_key.size());
}

}  // namespace

TEST_CASE("canonical keys partition all labeled digraphs like the brute force") {
  check_partition(2, 2);
  check_partition(3, 2);
  check_partition(4, 2);
  check_partition(2, 3);
  check_partition(3, 3);
  check_partition(4, 1);
  check_partition(5, 1);
}

TEST_CASE("keys are invariant under random relabeling") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    int n = 1 + static_cast<int>(rng() % 9);
    int k = 1 + static_cast<int>(rng() % 4);
    std::vector<std::vector<int>> rows(n, std::vector<int>(k));
    for (auto& r : rows) {
      for (int& w : r) w = static_cast<int>(rng() % n);
      std::sort(r.begin(), r.end());
    }
    Digraph d = Digraph::from_rows(n, k, rows);
    Digraph shuffled = relabel(d, random_perm(rng, n));
    REQUIRE(canonical_key(d) == canonical_key(shuffled));
    REQUIRE(canonical_form(d).automorphisms == canonical_form(shuffled).automorphisms);
  }
}

TEST_CASE("G30 key survives 100 relabelings") {
  std::mt19937_64 rng(30);
  Digraph g = g30();
  CanonicalKey key = canonical_key(g);
  for (int i = 0; i < 100; ++i) CHECK(canonical_key(relabel(g, random_perm(rng, g.n()))) == key);
}

TEST_CASE("random automorphism counts match the brute force") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    int k = 1 + static_cast<int>(rng() % 3);
    std::vector<std::vector<int>> rows(n, std::vector<int>(k));
    for (auto& r : rows) {
      for (int& w : r) w = static_cast<int>(rng() % n);
      std::sort(r.begin(), r.end());
    }
    REQUIRE(canonical_form(Digraph::from_rows(n, k, rows)).automorphisms == oracle::automorphisms(rows));
  }
}

TEST_CASE("key hex encoding round trips") {
  Digraph d = cerny_digraph(6);
  CanonicalKey key = canonical_key(d);
  CHECK(CanonicalKey::from_hex(key.hex()) == key);
  CHECK(digraph_of_key(key) == canonical_digraph(d));
  CHECK(raw_key(canonical_digraph(d)) == key);
  CHECK_THROWS_AS(CanonicalKey::from_hex("0g"), Error);
}

TEST_CASE("canonical labeling is size-limited") {
  Digraph big(kMaxCanonicalVertices + 1, 1);
  CHECK_THROWS_AS(canonical_form(big), Error);
}
