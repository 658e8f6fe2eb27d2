#pragma once

#include <optional>
#include <span>
#include <vector>

#include "core/digraph.hpp"

namespace synccensus {

/// Pair-graph test, O(k n^2): every pair of states must reach, backwards
/// through the pair graph, a pair that some letter merges in one step.
bool is_synchronizing(const Automaton& a);

/// Same test on a raw row-major table (table[q * k + letter]); used by the
/// census inner loop.
bool is_synchronizing(int n, int k, std::span<const Vertex> table);

inline constexpr int kMaxSubsetStates = 20;

/// Shortest reset word by breadth-first search over state subsets. Letters are
/// tried in increasing order, so the returned word is the first one found.
/// Throws Error(kSizeLimit) when n exceeds kMaxSubsetStates.
std::optional<std::vector<int>> shortest_reset_word(const Automaton& a);
std::optional<int> reset_threshold(const Automaton& a);

/// Image of the full state set under `word`.
std::vector<int> apply_word(const Automaton& a, std::span<const int> word);

}  // namespace synccensus
