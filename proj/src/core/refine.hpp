#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>

namespace synccensus::detail {

inline constexpr int kRefineMaxVertices = 16;

/// Multiplicity matrix of a (multi)digraph: m[u][v] edges u -> v.
struct Matrix {
  int n = 0;
  std::array<std::array<std::uint8_t, kRefineMaxVertices>, kRefineMaxVertices> m{};
};

using Coloring = std::array<std::uint8_t, kRefineMaxVertices>;

/// Colour refinement to a stable partition. `colors` holds dense ranks
/// 0..cells-1 on entry and on exit; cells are split in place, never reordered,
/// and new ranks depend only on the colour structure, not on vertex labels.
inline int refine(const Matrix& g, Coloring& colors, int cells) {
  const int n = g.n;
  constexpr int kWidth = 1 + 2 * kRefineMaxVertices;
  using Signature = std::array<std::uint8_t, kWidth>;
  std::array<Signature, kRefineMaxVertices> sig;
  std::array<int, kRefineMaxVertices> order;
  while (cells < n) {
    const int width = 1 + 2 * cells;
    for (int v = 0; v < n; ++v) {
      Signature& s = sig[v];
      std::memset(s.data(), 0, static_cast<std::size_t>(width));
      s[0] = colors[v];
      for (int w = 0; w < n; ++w) {
        s[1 + colors[w]] = static_cast<std::uint8_t>(s[1 + colors[w]] + g.m[v][w]);
        s[1 + cells + colors[w]] = static_cast<std::uint8_t>(s[1 + cells + colors[w]] + g.m[w][v]);
      }
      order[v] = v;
    }
    auto less = [&](int a, int b) { return std::memcmp(sig[a].data(), sig[b].data(), width) < 0; };
    std::sort(order.begin(), order.begin() + n, less);
    int rank = 0;
    Coloring next{};
    next[order[0]] = 0;
    for (int i = 1; i < n; ++i) {
      if (less(order[i - 1], order[i])) ++rank;
      next[order[i]] = static_cast<std::uint8_t>(rank);
    }
    const int new_cells = rank + 1;
    colors = next;
    if (new_cells == cells) break;
    cells = new_cells;
  }
  return cells;
}

/// Individualization-refinement search tree. Calls leaf(labels) for every
/// discrete partition reached; labels[v] is the new index of vertex v. The
/// set of leaves, as relabeled graphs, depends only on the isomorphism class
/// of (g, initial colours).
template <class Leaf>
void search_leaves(const Matrix& g, Coloring colors, int cells, Leaf& leaf) {
  cells = refine(g, colors, cells);
  if (cells == g.n) {
    leaf(colors);
    return;
  }
  std::array<int, kRefineMaxVertices> size{};
  for (int v = 0; v < g.n; ++v) ++size[colors[v]];
  int target = 0;
  while (size[target] < 2) ++target;
  for (int v = 0; v < g.n; ++v) {
    if (colors[v] != target) continue;
    Coloring child = colors;
    for (int u = 0; u < g.n; ++u) {
      if (colors[u] > target || (colors[u] == target && u != v)) ++child[u];
    }
    search_leaves(g, child, cells + 1, leaf);
  }
}

/// Dense ranks of arbitrary per-vertex invariants (ordered by the invariant).
template <class Key>
int rank_invariants(const std::array<Key, kRefineMaxVertices>& keys, int n, Coloring& colors) {
  std::array<int, kRefineMaxVertices> order;
  for (int v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.begin() + n, [&](int a, int b) { return keys[a] < keys[b]; });
  int rank = 0;
  colors[order[0]] = 0;
  for (int i = 1; i < n; ++i) {
    if (keys[order[i - 1]] < keys[order[i]]) ++rank;
    colors[order[i]] = static_cast<std::uint8_t>(rank);
  }
  return rank + 1;
}

}  // namespace synccensus::detail
