#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "core/digraph.hpp"
#include "core/numeric.hpp"

namespace synccensus {

/// Exact synchronizing-coloring counts for one digraph.
///
/// Colorings distinguish parallel edges, so there are (k!)^n of them; each
/// distinct transition table stands for `weight` colorings.
struct CensusResult {
  u128 sync_colorings = 0;
  u128 total_colorings = 0;
  u128 distinct_automata = 0;
  u128 weight = 0;
  u128 sync_automata = 0;

  Rational ratio() const { return Rational(sync_colorings, total_colorings); }
  bool totally_synchronizing() const { return sync_colorings == total_colorings; }

  friend bool operator==(const CensusResult&, const CensusResult&) = default;
};

/// Census JSON: integers as decimal strings, exact ratio "num/den", and a
/// float ratio rounded to 6 decimals.
std::string census_to_json(const CensusResult& r);

enum class CensusMode { kFull, kSymmetryReduced };

inline constexpr std::uint64_t kDefaultAutomatonBudget = 100'000'000'000ULL;

struct CensusOptions {
  CensusMode mode = CensusMode::kSymmetryReduced;
  std::uint64_t budget = kDefaultAutomatonBudget;  // cap on automata checked
  int workers = 1;
};

u128 distinct_automata_count(const Digraph& d);
u128 coloring_weight(const Digraph& d);  // prod over v of prod_i m_{v,i}!

/// The distinct transition tables of a digraph in lexicographic order:
/// vertex 0's row is the most significant digit, each row ranges over the
/// distinct arrangements of its destination multiset in lexicographic order.
class ColoringSpace {
 public:
  /// When `pinned` names a vertex, its row is held at the sorted arrangement.
  explicit ColoringSpace(const Digraph& d, std::optional<int> pinned = std::nullopt);

  u128 size() const { return size_; }
  int n() const { return n_; }
  int k() const { return k_; }

  /// Calls fn(table) for the automata with index in [first, last). Stops early
  /// and returns false if fn returns false.
  bool for_each(u128 first, u128 last, const std::function<bool(std::span<const Vertex>)>& fn) const;

  template <class Fn>
  bool visit(u128 first, u128 last, Fn&& fn) const;

 private:
  using Row = std::array<Vertex, kMaxDegree>;
  int n_;
  int k_;
  std::vector<std::vector<Row>> arrangements_;
  u128 size_ = 1;
};

template <class Fn>
bool ColoringSpace::visit(u128 first, u128 last, Fn&& fn) const {
  if (first >= last) return true;
  std::array<std::uint32_t, kMaxVertices> digit{};
  u128 rest = first;
  for (int v = n_ - 1; v >= 0; --v) {
    const u128 radix = arrangements_[v].size();
    digit[v] = static_cast<std::uint32_t>(rest % radix);
    rest /= radix;
  }
  std::array<Vertex, kMaxVertices * kMaxDegree> table{};
  for (int v = 0; v < n_; ++v) {
    std::copy_n(arrangements_[v][digit[v]].begin(), k_, table.begin() + v * k_);
  }
  const std::span<const Vertex> view(table.data(), static_cast<std::size_t>(n_) * k_);
  for (u128 index = first; index < last; ++index) {
    if (!fn(view)) return false;
    // Odometer increment, last vertex fastest.
    for (int v = n_ - 1; v >= 0; --v) {
      if (++digit[v] < arrangements_[v].size()) {
        std::copy_n(arrangements_[v][digit[v]].begin(), k_, table.begin() + v * k_);
        break;
      }
      digit[v] = 0;
      std::copy_n(arrangements_[v][0].begin(), k_, table.begin() + v * k_);
    }
  }
  return true;
}

/// Streams every distinct automaton of d exactly once, in ColoringSpace order.
/// Throws Error(kBudget) if there are more than `budget` of them.
void enumerate_distinct_automata(const Digraph& d, const std::function<void(const Automaton&)>& fn,
                                 std::uint64_t budget = kDefaultAutomatonBudget);

/// First vertex whose k destinations are pairwise distinct, if any. Fixing its
/// row picks one representative from every color-permutation orbit.
std::optional<int> free_action_pivot(const Digraph& d);

CensusResult census(const Digraph& d, const CensusOptions& options = {});

/// Early exit on the first non-synchronizing automaton.
bool is_totally_synchronizing(const Digraph& d, std::uint64_t budget = kDefaultAutomatonBudget);

/// Census through the unique sink component; zero synchronizing colorings when
/// there is more than one sink component.
CensusResult count_via_sink(const Digraph& d, const CensusOptions& options = {});

}  // namespace synccensus
