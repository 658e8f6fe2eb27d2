#include <doctest.h>

#include <map>
#include <numeric>
#include <set>

#include "core/canonical.hpp"
#include "core/enumerate.hpp"
#include "core/error.hpp"
#include "core/simple_graph.hpp"
#include "oracles.hpp"

using namespace synccensus;

namespace {

// Isomorphism classes of simple graphs by trying all n! relabelings.
std::size_t brute_simple_classes(int n, bool connected_only) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::set<std::vector<int>> classes;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    SimpleGraph g;
    g.n = n;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) g.add_edge(pairs[i].first, pairs[i].second);
    if (connected_only && !g.is_connected()) continue;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    do {
      std::vector<int> bits(n * n, 0);
      for (auto [u, v] : g.edges()) {
        bits[perm[u] * n + perm[v]] = 1;
        bits[perm[v] * n + perm[u]] = 1;
      }
      if (best.empty() || bits < best) best = bits;
    } while (std::next_permutation(perm.begin(), perm.end()));
    classes.insert(best);
  }
  return classes.size();
}

std::set<std::vector<int>> oracle_forms(const std::vector<Digraph>& ds) {
  std::set<std::vector<int>> out;
  for (const Digraph& d : ds) out.insert(oracle::canonical(d.rows()));
  return out;
}

}  // namespace

TEST_CASE("simple graph classes match the brute force") {
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    auto all = enumerate_simple_graphs(n);
    CHECK(all.size() == brute_simple_classes(n, false));
    std::size_t connected = 0;
    for (const auto& g : all) {
      connected += g.is_connected() ? 1 : 0;
      CHECK(canonical_simple_graph(g) == g);
    }
    CHECK(connected == brute_simple_classes(n, true));
  }
  CHECK_THROWS_AS(enumerate_simple_graphs(kMaxSeedVertices + 1), Error);
}

TEST_CASE("orient_and_multiply produces exactly the digraphs over a simple graph") {
  for (auto [n, k] : {std::pair{3, 2}, {3, 3}, {4, 2}}) {
    std::map<std::vector<std::uint16_t>, std::set<std::vector<int>>> expected;
    oracle::for_each_labeled(n, k, [&](const oracle::Rows& rows) {
      SimpleGraph g = underlying_simple_graph(Digraph::from_rows(n, k, rows));
      std::vector<int> flat;
      for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
      expected[{g.adjacency.begin(), g.adjacency.begin() + n}].insert(flat);
    });
    for (auto& [adj, digraphs] : expected) {
      SimpleGraph g;
      g.n = n;
      std::copy(adj.begin(), adj.end(), g.adjacency.begin());
      std::set<std::vector<int>> got;
      std::size_t calls = 0;
      orient_and_multiply(g, k, [&](const Digraph& d) {
        ++calls;
        std::vector<int> flat(d.flat().begin(), d.flat().end());
        got.insert(flat);
      });
      CHECK(calls == got.size());
      CHECK(got == digraphs);
    }
  }
}

TEST_CASE("both enumeration modes find exactly the brute-force primitive classes") {
  for (auto [n, k] : {std::pair{1, 1}, {1, 2}, {2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}, {2, 4}, {4, 1}}) {
    CAPTURE(n);
    CAPTURE(k);
    auto expected = oracle::primitive_classes(n, k);
    auto seeded = enumerate_primitive_digraphs(n, k, EnumerationMode::kSeeded);
    auto direct = enumerate_primitive_digraphs(n, k, EnumerationMode::kDirect);
    CHECK(seeded.size() == expected.size());
    CHECK(direct.size() == expected.size());
    CHECK(oracle_forms(seeded) == expected);
    CHECK(oracle_forms(direct) == expected);
    for (const Digraph& d : seeded) CHECK(canonical_digraph(d) == d);
  }
}

TEST_CASE("enumeration output does not depend on the worker count") {
  auto one = enumerate_primitive_digraphs(5, 2, EnumerationMode::kSeeded, 1);
  auto three = enumerate_primitive_digraphs(5, 2, EnumerationMode::kSeeded, 3);
  CHECK(one == three);
  CHECK(one.size() == 1220);
}

TEST_CASE("direct mode honors the candidate budget") {
  try {
    enumerate_primitive_digraphs(4, 3, EnumerationMode::kDirect, 1, 1000);
    FAIL("expected budget error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBudget);
  }
}
