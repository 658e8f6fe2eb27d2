#include "core/simple_graph.hpp"

#include <algorithm>
#include <set>

#include "core/error.hpp"
#include "core/refine.hpp"

namespace synccensus {

void SimpleGraph::add_edge(int u, int v) {
  if (u == v || u < 0 || v < 0 || u >= n || v >= n) {
    throw Error(ErrorCode::kInvalidArgument, "simple graph edge must join two distinct vertices");
  }
  adjacency[u] = static_cast<std::uint16_t>(adjacency[u] | (1u << v));
  adjacency[v] = static_cast<std::uint16_t>(adjacency[v] | (1u << u));
}

std::vector<std::pair<int, int>> SimpleGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (has_edge(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

bool SimpleGraph::is_connected() const {
  if (n <= 1) return true;
  unsigned seen = 1, frontier = 1;
  while (frontier != 0) {
    unsigned next = 0;
    for (unsigned f = frontier; f != 0; f &= f - 1) next |= adjacency[__builtin_ctz(f)];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (1u << n) - 1;
}

namespace {

// Upper-triangle adjacency bits in row order; a smaller value is preferred.
using AdjacencyCode = std::uint32_t;

AdjacencyCode code_of(const SimpleGraph& g, const detail::Coloring& labels) {
  std::array<std::uint16_t, detail::kRefineMaxVertices> adj{};
  for (int u = 0; u < g.n; ++u) {
    for (int v = 0; v < g.n; ++v) {
      if (g.has_edge(u, v)) adj[labels[u]] = static_cast<std::uint16_t>(adj[labels[u]] | (1u << labels[v]));
    }
  }
  AdjacencyCode code = 0;
  for (int u = 0; u < g.n; ++u) {
    for (int v = u + 1; v < g.n; ++v) code = (code << 1) | ((adj[u] >> v) & 1u);
  }
  return code;
}

SimpleGraph graph_of_code(int n, AdjacencyCode code) {
  SimpleGraph g{n, {}};
  int bit = n * (n - 1) / 2 - 1;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, --bit) {
      if ((code >> bit) & 1u) g.add_edge(u, v);
    }
  }
  return g;
}

AdjacencyCode canonical_code(const SimpleGraph& g) {
  detail::Matrix m;
  m.n = g.n;
  for (int u = 0; u < g.n; ++u) {
    for (int v = 0; v < g.n; ++v) m.m[u][v] = g.has_edge(u, v) ? 1 : 0;
  }
  struct Leaf {
    const SimpleGraph& g;
    bool found = false;
    AdjacencyCode best = 0;
    void operator()(const detail::Coloring& labels) {
      AdjacencyCode c = code_of(g, labels);
      if (!found || c < best) best = c;
      found = true;
    }
  } leaf{g};
  detail::Coloring colors{};
  detail::search_leaves(m, colors, 1, leaf);
  return leaf.best;
}

}  // namespace

SimpleGraph canonical_simple_graph(const SimpleGraph& g) {
  if (g.n > kMaxSeedVertices) throw Error(ErrorCode::kSizeLimit, "simple graphs support at most 7 vertices");
  return graph_of_code(g.n, canonical_code(g));
}

std::vector<SimpleGraph> enumerate_simple_graphs(int n) {
  if (n < 1 || n > kMaxSeedVertices) {
    throw Error(ErrorCode::kSizeLimit, "simple graph enumeration supports 1 to 7 vertices, got " + std::to_string(n));
  }
  const int pairs = n * (n - 1) / 2;
  std::vector<std::pair<int, int>> slots;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  }
  std::set<AdjacencyCode> codes;
  for (std::uint32_t subset = 0; subset < (1u << pairs); ++subset) {
    // Every class has a labeling with non-increasing degrees; skip the rest.
    std::array<int, kMaxSeedVertices> degree{};
    for (int i = 0; i < pairs; ++i) {
      if ((subset >> i) & 1u) {
        ++degree[slots[i].first];
        ++degree[slots[i].second];
      }
    }
    if (!std::is_sorted(degree.begin(), degree.begin() + n, std::greater<>())) continue;
    SimpleGraph g{n, {}};
    for (int i = 0; i < pairs; ++i) {
      if ((subset >> i) & 1u) g.add_edge(slots[i].first, slots[i].second);
    }
    codes.insert(canonical_code(g));
  }
  std::vector<SimpleGraph> out;
  out.reserve(codes.size());
  for (AdjacencyCode c : codes) out.push_back(graph_of_code(n, c));
  return out;
}

void orient_and_multiply(const SimpleGraph& g, int k, const std::function<void(const Digraph&)>& fn) {
  const int n = g.n;
  const auto edges = g.edges();
  const int m = static_cast<int>(edges.size());
  std::array<int, kMaxVertices> used{};                    // non-loop out-degree so far
  std::array<std::array<Vertex, kMaxDegree>, kMaxVertices> rows{};
  Digraph d(n, k);

  std::function<void(int)> place = [&](int e) {
    if (e == m) {
      std::array<Vertex, kMaxDegree> row{};
      for (int v = 0; v < n; ++v) {
        std::copy_n(rows[v].begin(), used[v], row.begin());
        std::fill(row.begin() + used[v], row.begin() + k, static_cast<Vertex>(v));
        d.set_dests(v, std::span<const Vertex>(row.data(), k));
      }
      fn(d);
      return;
    }
    const auto [u, v] = edges[e];
    const int base_u = used[u], base_v = used[v];
    for (int a = 0; base_u + a <= k; ++a) {
      for (int b = 0; base_v + b <= k; ++b) {
        if (a + b == 0) continue;
        for (int i = 0; i < a; ++i) rows[u][base_u + i] = static_cast<Vertex>(v);
        for (int i = 0; i < b; ++i) rows[v][base_v + i] = static_cast<Vertex>(u);
        used[u] = base_u + a;
        used[v] = base_v + b;
        place(e + 1);
      }
    }
    used[u] = base_u;
    used[v] = base_v;
  };
  place(0);
}

SimpleGraph underlying_simple_graph(const Digraph& d) {
  SimpleGraph g{d.n(), {}};
  for (int v = 0; v < d.n(); ++v) {
    for (Vertex w : d.dests(v)) {
      if (w != v) g.add_edge(v, w);
    }
  }
  return g;
}

}  // namespace synccensus
