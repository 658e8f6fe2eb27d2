#include "core/enumerate.hpp"

#include <atomic>
#include <thread>
#include <unordered_set>

#include "core/analysis.hpp"
#include "core/canonical.hpp"
#include "core/error.hpp"

namespace synccensus {

namespace {

std::uint64_t multichoose(int n, int k) {
  // C(n + k - 1, k)
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * static_cast<std::uint64_t>(n + i - 1) / static_cast<std::uint64_t>(i);
  return out;
}

}  // namespace

PrimitiveEnumerator::PrimitiveEnumerator(int n, int k, EnumerationMode mode, std::uint64_t max_candidates)
    : n_(n), k_(k), mode_(mode) {
  if (k < 1 || k > kMaxDegree) throw Error(ErrorCode::kSizeLimit, "out-degree must be in [1, 6]");
  if (n < 1 || n > kMaxCanonicalVertices) {
    throw Error(ErrorCode::kSizeLimit, "enumeration supports at most " + std::to_string(kMaxCanonicalVertices) + " vertices");
  }
  if (mode == EnumerationMode::kSeeded) {
    if (n > kMaxSeedVertices) {
      throw Error(ErrorCode::kSizeLimit, "seeded enumeration supports at most " + std::to_string(kMaxSeedVertices) + " vertices");
    }
    for (const SimpleGraph& g : enumerate_simple_graphs(n)) {
      if (g.is_connected()) seeds_.push_back(g);
    }
    return;
  }
  std::uint64_t per_row = multichoose(n, k);
  candidates_ = 1;
  for (int v = 0; v < n; ++v) {
    if (candidates_ > max_candidates / per_row) {
      throw Error(ErrorCode::kBudget, "direct enumeration of (n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                                          ") exceeds the candidate budget of " + std::to_string(max_candidates));
    }
    candidates_ *= per_row;
  }
  std::array<Vertex, kMaxDegree> row{};
  // Non-decreasing rows in lexicographic order.
  while (true) {
    rows_.push_back(row);
    int i = k - 1;
    while (i >= 0 && row[i] == n - 1) --i;
    if (i < 0) break;
    Vertex next = static_cast<Vertex>(row[i] + 1);
    for (int j = i; j < k; ++j) row[j] = next;
  }
}

std::size_t PrimitiveEnumerator::chunk_count() const {
  return mode_ == EnumerationMode::kSeeded ? seeds_.size() : rows_.size();
}

std::vector<Digraph> PrimitiveEnumerator::run_chunk(std::size_t i) const {
  if (i >= chunk_count()) throw Error(ErrorCode::kInvalidArgument, "chunk index out of range");
  std::vector<Digraph> found;
  std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
  auto offer = [&](const Digraph& d) {
    if (!is_primitive(d)) return;
    Digraph canon = canonical_digraph(d);
    if (seen.insert(raw_key(canon)).second) found.push_back(canon);
  };

  if (mode_ == EnumerationMode::kSeeded) {
    orient_and_multiply(seeds_[i], k_, offer);
    return found;
  }

  const int n = n_, k = k_;
  const std::size_t radix = rows_.size();
  Digraph d(n, k);
  d.set_dests(0, std::span<const Vertex>(rows_[i].data(), k));
  std::array<std::size_t, kMaxVertices> digit{};
  for (int v = 1; v < n; ++v) d.set_dests(v, std::span<const Vertex>(rows_[0].data(), k));
  while (true) {
    offer(d);
    int v = n - 1;
    for (; v >= 1; --v) {
      if (++digit[v] < radix) {
        d.set_dests(v, std::span<const Vertex>(rows_[digit[v]].data(), k));
        break;
      }
      digit[v] = 0;
      d.set_dests(v, std::span<const Vertex>(rows_[0].data(), k));
    }
    if (v < 1) break;
  }
  return found;
}

std::vector<Digraph> enumerate_primitive_digraphs(int n, int k, EnumerationMode mode, int workers,
                                                  std::uint64_t max_candidates) {
  PrimitiveEnumerator e(n, k, mode, max_candidates);
  const std::size_t chunks = e.chunk_count();
  std::vector<std::vector<Digraph>> results(chunks);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t c; (c = next.fetch_add(1)) < chunks;) results[c] = e.run_chunk(c);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  std::vector<Digraph> out;
  std::unordered_set<CanonicalKey, CanonicalKeyHash> global;
  for (auto& chunk : results) {
    for (Digraph& d : chunk) {
      if (global.insert(raw_key(d)).second) {
        out.push_back(d);
      } else if (mode == EnumerationMode::kSeeded) {
        throw Error(ErrorCode::kInternal, "isomorphic digraphs produced from two different seeds");
      }
    }
  }
  return out;
}

}  // namespace synccensus
