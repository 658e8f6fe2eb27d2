#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "core/digraph.hpp"

namespace synccensus {

struct SccDecomposition {
  std::vector<int> component_of;               // per vertex
  std::vector<std::vector<int>> components;    // vertices of each component, ascending
  std::vector<std::pair<int, int>> condensation_edges;  // distinct (from, to), from != to
  std::vector<int> sink_components;            // components without outgoing condensation edges
  std::vector<bool> reachable;                 // per component: reachable from every vertex
};

/// Tarjan's algorithm, iterative. Components are numbered in order of
/// completion, so every condensation edge goes from a higher id to a lower one.
SccDecomposition decompose_scc(const Digraph& d);

bool is_strongly_connected(const Digraph& d);

/// gcd of all cycle lengths. Throws Error(kDomain) unless d is strongly connected.
int cycle_gcd(const Digraph& d);
bool is_aperiodic(const Digraph& d);

bool is_primitive(const Digraph& d);

struct SinkReduction {
  Digraph induced;
  std::vector<int> vertex_map;  // induced vertex -> original vertex
};

/// The digraph induced by the unique sink component, or nullopt when there
/// are two or more sink components.
std::optional<SinkReduction> sink_reduction(const Digraph& d);

}  // namespace synccensus
