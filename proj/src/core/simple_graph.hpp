#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "core/digraph.hpp"

namespace synccensus {

inline constexpr int kMaxSeedVertices = 7;

/// Undirected graph without loops or parallel edges.
struct SimpleGraph {
  int n = 0;
  std::array<std::uint16_t, kMaxVertices> adjacency{};  // bit w of adjacency[v]

  bool has_edge(int u, int v) const { return (adjacency[u] >> v) & 1u; }
  void add_edge(int u, int v);
  std::vector<std::pair<int, int>> edges() const;  // u < v, lexicographic
  bool is_connected() const;

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;
};

/// Canonical relabeling of a simple graph (individualization-refinement).
SimpleGraph canonical_simple_graph(const SimpleGraph& g);

/// One representative per isomorphism class, each in canonical labeling,
/// ordered by canonical adjacency. Throws Error(kSizeLimit) for n > 7.
std::vector<SimpleGraph> enumerate_simple_graphs(int n);

/// Every digraph whose underlying simple graph is exactly g: each edge {u,v}
/// gets a >= 0 copies of u->v and b >= 0 of v->u with a + b >= 1, no vertex
/// exceeds k non-loop edges, and loops fill the rest.
void orient_and_multiply(const SimpleGraph& g, int k, const std::function<void(const Digraph&)>& fn);

/// The underlying simple graph of a digraph (loops dropped, directions and
/// multiplicities forgotten).
SimpleGraph underlying_simple_graph(const Digraph& d);

}  // namespace synccensus
