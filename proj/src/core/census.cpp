#include "core/census.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <json.hpp>

#include "core/analysis.hpp"
#include "core/error.hpp"
#include "core/sync.hpp"

namespace synccensus {

std::string census_to_json(const CensusResult& r) {
  nlohmann::ordered_json j;
  j["sync_colorings"] = to_decimal(r.sync_colorings);
  j["total_colorings"] = to_decimal(r.total_colorings);
  j["distinct_automata"] = to_decimal(r.distinct_automata);
  j["weight"] = to_decimal(r.weight);
  j["sync_automata"] = to_decimal(r.sync_automata);
  Rational ratio = r.ratio();
  j["ratio"] = ratio.str();
  j["ratio_float"] = std::round(ratio.to_double() * 1e6) / 1e6;
  j["totally_synchronizing"] = r.totally_synchronizing();
  return j.dump();
}

u128 coloring_weight(const Digraph& d) {
  u128 w = 1;
  for (int v = 0; v < d.n(); ++v) {
    for (auto [dest, m] : d.multiplicities(v)) w = checked_mul(w, factorial(m));
  }
  return w;
}

u128 distinct_automata_count(const Digraph& d) {
  u128 count = 1;
  const u128 kfact = factorial(d.k());
  for (int v = 0; v < d.n(); ++v) {
    u128 row = kfact;
    for (auto [dest, m] : d.multiplicities(v)) row /= factorial(m);
    count = checked_mul(count, row);
  }
  return count;
}

ColoringSpace::ColoringSpace(const Digraph& d, std::optional<int> pinned) : n_(d.n()), k_(d.k()) {
  arrangements_.resize(n_);
  for (int v = 0; v < n_; ++v) {
    Row row{};
    auto src = d.dests(v);
    std::copy(src.begin(), src.end(), row.begin());
    auto& list = arrangements_[v];
    if (pinned && *pinned == v) {
      list.push_back(row);
    } else {
      do {
        list.push_back(row);
      } while (std::next_permutation(row.begin(), row.begin() + k_));
    }
    size_ = checked_mul(size_, list.size());
  }
}

bool ColoringSpace::for_each(u128 first, u128 last, const std::function<bool(std::span<const Vertex>)>& fn) const {
  return visit(first, last, fn);
}

void enumerate_distinct_automata(const Digraph& d, const std::function<void(const Automaton&)>& fn,
                                 std::uint64_t budget) {
  ColoringSpace space(d);
  if (space.size() > budget) {
    throw Error(ErrorCode::kBudget, "digraph has " + to_decimal(space.size()) + " distinct automata, budget is " + std::to_string(budget));
  }
  space.visit(0, space.size(), [&](std::span<const Vertex> table) {
    fn(Automaton(d.n(), d.k(), std::vector<Vertex>(table.begin(), table.end())));
    return true;
  });
}

std::optional<int> free_action_pivot(const Digraph& d) {
  for (int v = 0; v < d.n(); ++v) {
    auto row = d.dests(v);
    if (std::adjacent_find(row.begin(), row.end()) == row.end()) return v;
  }
  return std::nullopt;
}

namespace {

u128 count_synchronizing(const ColoringSpace& space, int workers) {
  const int n = space.n(), k = space.k();
  auto count_range = [&](u128 first, u128 last) {
    u128 count = 0;
    space.visit(first, last, [&](std::span<const Vertex> table) {
      if (is_synchronizing(n, k, table)) ++count;
      return true;
    });
    return count;
  };
  const u128 size = space.size();
  if (workers <= 1 || size < 4096) return count_range(0, size);

  // Fixed chunk boundaries; partial counts merge by addition.
  const u128 chunks = static_cast<u128>(workers) * 8;
  std::vector<u128> partial(static_cast<std::size_t>(chunks), 0);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t c; (c = next.fetch_add(1)) < partial.size();) {
        partial[c] = count_range(size * c / chunks, size * (c + 1) / chunks);
      }
    });
  }
  for (auto& t : pool) t.join();
  u128 total = 0;
  for (u128 p : partial) total += p;
  return total;
}

}  // namespace

CensusResult census(const Digraph& d, const CensusOptions& options) {
  CensusResult r;
  const u128 kfact = factorial(d.k());
  r.total_colorings = 1;
  for (int v = 0; v < d.n(); ++v) r.total_colorings = checked_mul(r.total_colorings, kfact);
  r.weight = coloring_weight(d);
  r.distinct_automata = distinct_automata_count(d);

  std::optional<int> pivot;
  if (options.mode == CensusMode::kSymmetryReduced) pivot = free_action_pivot(d);
  ColoringSpace space(d, pivot);
  if (space.size() > options.budget) {
    throw Error(ErrorCode::kBudget, "census needs " + to_decimal(space.size()) + " automaton checks, budget is " + std::to_string(options.budget));
  }
  u128 sync = count_synchronizing(space, options.workers);
  r.sync_automata = pivot ? checked_mul(sync, kfact) : sync;
  r.sync_colorings = checked_mul(r.sync_automata, r.weight);

  if (checked_mul(r.distinct_automata, r.weight) != r.total_colorings) {
    throw Error(ErrorCode::kInternal, "census invariant violated: distinct automata * weight != (k!)^n");
  }
  return r;
}

bool is_totally_synchronizing(const Digraph& d, std::uint64_t budget) {
  std::optional<int> pivot = free_action_pivot(d);
  ColoringSpace space(d, pivot);
  if (space.size() > budget) {
    throw Error(ErrorCode::kBudget, "totality check needs " + to_decimal(space.size()) + " automaton checks, budget is " + std::to_string(budget));
  }
  const int n = d.n(), k = d.k();
  return space.visit(0, space.size(), [&](std::span<const Vertex> table) { return is_synchronizing(n, k, table); });
}

CensusResult count_via_sink(const Digraph& d, const CensusOptions& options) {
  CensusResult r;
  const u128 kfact = factorial(d.k());
  r.total_colorings = 1;
  for (int v = 0; v < d.n(); ++v) r.total_colorings = checked_mul(r.total_colorings, kfact);
  r.weight = coloring_weight(d);
  r.distinct_automata = distinct_automata_count(d);

  auto reduction = sink_reduction(d);
  if (!reduction) return r;

  CensusResult inner = census(reduction->induced, options);
  // Every choice of rows outside the sink combines with each induced automaton.
  u128 outside = r.distinct_automata / inner.distinct_automata;
  r.sync_automata = checked_mul(inner.sync_automata, outside);
  r.sync_colorings = checked_mul(r.sync_automata, r.weight);
  return r;
}

}  // namespace synccensus
