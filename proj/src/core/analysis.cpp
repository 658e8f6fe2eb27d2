#include "core/analysis.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>

#include "core/error.hpp"

namespace synccensus {

namespace {

using Mask = std::uint32_t;

struct Adjacency {
  std::array<Mask, kMaxVertices> out{};
  std::array<Mask, kMaxVertices> in{};
};

Adjacency adjacency(const Digraph& d) {
  Adjacency adj;
  for (int v = 0; v < d.n(); ++v) {
    for (Vertex w : d.dests(v)) {
      adj.out[v] |= Mask{1} << w;
      adj.in[w] |= Mask{1} << v;
    }
  }
  return adj;
}

Mask closure(const std::array<Mask, kMaxVertices>& step, Mask start) {
  Mask seen = start;
  Mask frontier = start;
  while (frontier != 0) {
    Mask next = 0;
    while (frontier != 0) {
      int v = __builtin_ctz(frontier);
      frontier &= frontier - 1;
      next |= step[v];
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen;
}

}  // namespace

SccDecomposition decompose_scc(const Digraph& d) {
  const int n = d.n();
  SccDecomposition out;
  out.component_of.assign(n, -1);

  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  int counter = 0;

  struct Frame {
    int v;
    int edge;
  };
  std::vector<Frame> call;

  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      Frame& f = call.back();
      auto row = d.dests(f.v);
      if (f.edge < d.k()) {
        int w = row[f.edge++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      int v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        int id = static_cast<int>(out.components.size());
        std::vector<int> members;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.component_of[w] = id;
          members.push_back(w);
        } while (w != v);
        std::sort(members.begin(), members.end());
        out.components.push_back(std::move(members));
      }
    }
  }

  const int c = static_cast<int>(out.components.size());
  std::vector<bool> has_out(c, false);
  for (int v = 0; v < n; ++v) {
    for (Vertex w : d.dests(v)) {
      int a = out.component_of[v], b = out.component_of[w];
      if (a != b) {
        out.condensation_edges.emplace_back(a, b);
        has_out[a] = true;
      }
    }
  }
  std::sort(out.condensation_edges.begin(), out.condensation_edges.end());
  out.condensation_edges.erase(std::unique(out.condensation_edges.begin(), out.condensation_edges.end()),
                               out.condensation_edges.end());
  for (int i = 0; i < c; ++i) {
    if (!has_out[i]) out.sink_components.push_back(i);
  }
  // Every vertex reaches some sink, so a sink is reachable from all vertices
  // exactly when it is the only one.
  out.reachable.assign(c, false);
  if (out.sink_components.size() == 1) out.reachable[out.sink_components.front()] = true;
  return out;
}

bool is_strongly_connected(const Digraph& d) {
  const Mask all = (Mask{1} << d.n()) - 1;
  Adjacency adj = adjacency(d);
  return closure(adj.out, 1) == all && closure(adj.in, 1) == all;
}

namespace {

// BFS levels from vertex 0; valid only when every vertex is reachable.
int level_gcd(const Digraph& d) {
  const int n = d.n();
  std::array<int, kMaxVertices> level;
  level.fill(-1);
  std::array<int, kMaxVertices> queue{};
  int head = 0, tail = 0;
  level[0] = 0;
  queue[tail++] = 0;
  while (head < tail) {
    int v = queue[head++];
    for (Vertex w : d.dests(v)) {
      if (level[w] == -1) {
        level[w] = level[v] + 1;
        queue[tail++] = w;
      }
    }
  }
  int g = 0;
  for (int v = 0; v < n; ++v) {
    for (Vertex w : d.dests(v)) g = std::gcd(g, std::abs(level[v] + 1 - level[w]));
  }
  return g;
}

}  // namespace

int cycle_gcd(const Digraph& d) {
  if (!is_strongly_connected(d)) {
    throw Error(ErrorCode::kDomain, "cycle gcd is only defined for strongly connected digraphs");
  }
  return level_gcd(d);
}

bool is_aperiodic(const Digraph& d) { return cycle_gcd(d) == 1; }

bool is_primitive(const Digraph& d) { return is_strongly_connected(d) && level_gcd(d) == 1; }

std::optional<SinkReduction> sink_reduction(const Digraph& d) {
  SccDecomposition scc = decompose_scc(d);
  if (scc.sink_components.size() != 1) return std::nullopt;
  const std::vector<int>& members = scc.components[scc.sink_components.front()];
  std::vector<int> new_index(d.n(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) new_index[members[i]] = static_cast<int>(i);

  SinkReduction out{Digraph(static_cast<int>(members.size()), d.k()), members};
  std::array<Vertex, kMaxDegree> row{};
  for (std::size_t i = 0; i < members.size(); ++i) {
    auto src = d.dests(members[i]);
    for (int j = 0; j < d.k(); ++j) row[j] = static_cast<Vertex>(new_index[src[j]]);
    out.induced.set_dests(static_cast<int>(i), std::span<const Vertex>(row.data(), d.k()));
  }
  return out;
}

}  // namespace synccensus
