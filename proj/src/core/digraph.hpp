#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace synccensus {

inline constexpr int kMaxVertices = 15;
inline constexpr int kMaxDegree = 6;

using Vertex = std::uint8_t;

/// A k-out-regular directed multigraph with loops.
///
/// Vertex v owns exactly k edge slots; `dests(v)` lists their destinations in
/// non-decreasing order. Parallel edges are kept as repeated entries, so edge
/// identity inside a bundle is not represented. Fixed capacity, no heap.
class Digraph {
 public:
  /// The one-vertex digraph with a single loop.
  Digraph() : Digraph(1, 1) {}

  /// n vertices of out-degree k, every edge pointing at vertex 0.
  Digraph(int n, int k);

  /// Throws Error(kInvalidArgument) naming the first violated invariant.
  static Digraph from_rows(int n, int k, const std::vector<std::vector<int>>& rows);

  int n() const { return n_; }
  int k() const { return k_; }

  std::span<const Vertex> dests(int v) const {
    return {slots_.data() + static_cast<std::size_t>(v) * k_, static_cast<std::size_t>(k_)};
  }
  std::span<const Vertex> flat() const {
    return {slots_.data(), static_cast<std::size_t>(n_) * k_};
  }

  /// Replaces the destinations of v; the row is sorted on the way in.
  void set_dests(int v, std::span<const Vertex> row);

  /// (destination, multiplicity) pairs of v, destinations strictly increasing.
  std::vector<std::pair<int, int>> multiplicities(int v) const;
  int loop_count(int v) const;
  std::vector<std::vector<int>> rows() const;

  friend bool operator==(const Digraph& a, const Digraph& b) {
    if (a.n_ != b.n_ || a.k_ != b.k_) return false;
    auto fa = a.flat();
    auto fb = b.flat();
    return std::equal(fa.begin(), fa.end(), fb.begin());
  }

 private:
  std::uint8_t n_;
  std::uint8_t k_;
  std::array<Vertex, kMaxVertices * kMaxDegree> slots_{};
};

/// Returns nullopt when (n, k, rows) describes a valid Digraph, otherwise a
/// message naming the first violated invariant.
std::optional<std::string> validate(int n, int k, const std::vector<std::vector<int>>& rows);

/// Complete deterministic automaton: `next(q, a)` for states q < n, letters a < k.
class Automaton {
 public:
  static constexpr int kMaxStates = 255;
  static constexpr int kMaxLetters = 16;

  /// `table` is row-major, table[q * k + a].
  Automaton(int n, int k, std::vector<Vertex> table);
  static Automaton from_rows(const std::vector<std::vector<int>>& rows);

  int n() const { return n_; }
  int k() const { return k_; }
  Vertex next(int state, int letter) const { return table_[static_cast<std::size_t>(state) * k_ + letter]; }
  std::span<const Vertex> table() const { return table_; }

  friend bool operator==(const Automaton&, const Automaton&) = default;

 private:
  int n_;
  int k_;
  std::vector<Vertex> table_;
};

/// The underlying digraph of a coloring.
Digraph digraph_of_automaton(const Automaton& a);

/// Text format: "n k" header, then one line per vertex with k 1-indexed
/// destinations in non-decreasing order. '#' starts a comment.
Digraph parse_digraph(std::string_view text);
std::string format_digraph(const Digraph& d);

/// JSON object {"n":..,"k":..,"dests":[[..],..]} with 0-indexed destinations.
Digraph parse_digraph_json(std::string_view text);
std::string format_digraph_json(const Digraph& d);

}  // namespace synccensus
