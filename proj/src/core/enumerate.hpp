#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "core/digraph.hpp"
#include "core/simple_graph.hpp"

namespace synccensus {

enum class EnumerationMode { kSeeded, kDirect };

inline constexpr std::uint64_t kDefaultCandidateBudget = 2'000'000'000ULL;

/// Nonisomorphic primitive k-out-regular digraphs on n vertices, split into
/// fixed chunks for parallel and resumable runs.
///
/// Seeded: one chunk per connected simple-graph seed (disconnected seeds
/// cannot yield a strongly connected digraph); each chunk orients and
/// multiplies its seed and deduplicates against its own canonical-key set.
/// Distinct seeds never produce isomorphic digraphs.
///
/// Direct: the labeled space of destination tables, chunked by vertex 0's
/// row; classes may repeat across chunks and are deduplicated on merge.
class PrimitiveEnumerator {
 public:
  PrimitiveEnumerator(int n, int k, EnumerationMode mode, std::uint64_t max_candidates = kDefaultCandidateBudget);

  int n() const { return n_; }
  int k() const { return k_; }
  EnumerationMode mode() const { return mode_; }
  std::size_t chunk_count() const;

  /// Canonical forms of the primitive digraphs found in chunk i, in
  /// generation order, one per isomorphism class within the chunk.
  std::vector<Digraph> run_chunk(std::size_t i) const;

  /// Labeled candidates examined by the whole run (direct mode), or by the
  /// seeded orientation search.
  std::uint64_t candidate_count() const { return candidates_; }

 private:
  int n_;
  int k_;
  EnumerationMode mode_;
  std::vector<SimpleGraph> seeds_;
  std::vector<std::array<Vertex, kMaxDegree>> rows_;  // sorted rows, direct mode
  std::uint64_t candidates_ = 0;
};

/// Whole-run convenience: chunks merged in order with a global canonical-key
/// set. In seeded mode a key repeating across chunks is an internal error.
std::vector<Digraph> enumerate_primitive_digraphs(int n, int k, EnumerationMode mode, int workers = 1,
                                                  std::uint64_t max_candidates = kDefaultCandidateBudget);

}  // namespace synccensus
