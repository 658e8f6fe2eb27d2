#include "core/sync.hpp"

#include <algorithm>
#include <cstdint>

#include "core/error.hpp"

namespace synccensus {

namespace {

struct PairScratch {
  std::vector<std::uint8_t> marked;    // n * n, indexed p * n + q with p < q
  std::vector<std::uint16_t> queue;    // packed p * n + q
  std::vector<int> pre_start;          // k * (n + 1)
  std::vector<Vertex> pre_list;        // k * n
};

}  // namespace

bool is_synchronizing(int n, int k, std::span<const Vertex> table) {
  if (n <= 1) return true;
  thread_local PairScratch s;
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  s.marked.assign(nn, 0);
  s.queue.resize(nn);
  s.pre_start.assign(static_cast<std::size_t>(k) * (n + 1), 0);
  s.pre_list.resize(static_cast<std::size_t>(k) * n);

  // Reverse transitions per letter, bucketed by target state.
  for (int a = 0; a < k; ++a) {
    int* start = s.pre_start.data() + static_cast<std::size_t>(a) * (n + 1);
    for (int q = 0; q < n; ++q) ++start[table[q * k + a] + 1];
    for (int q = 0; q < n; ++q) start[q + 1] += start[q];
    Vertex* list = s.pre_list.data() + static_cast<std::size_t>(a) * n;
    int fill[Automaton::kMaxStates + 1];
    std::copy(start, start + n, fill);
    for (int q = 0; q < n; ++q) list[fill[table[q * k + a]]++] = static_cast<Vertex>(q);
  }

  const int total = n * (n - 1) / 2;
  int marked = 0;
  int head = 0, tail = 0;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      for (int a = 0; a < k; ++a) {
        if (table[p * k + a] == table[q * k + a]) {
          s.marked[p * n + q] = 1;
          s.queue[tail++] = static_cast<std::uint16_t>(p * n + q);
          ++marked;
          break;
        }
      }
    }
  }
  if (marked == 0) return false;
  if (marked == total) return true;

  while (head < tail) {
    int packed = s.queue[head++];
    int p = packed / n, q = packed % n;
    for (int a = 0; a < k; ++a) {
      const int* start = s.pre_start.data() + static_cast<std::size_t>(a) * (n + 1);
      const Vertex* list = s.pre_list.data() + static_cast<std::size_t>(a) * n;
      for (int i = start[p]; i < start[p + 1]; ++i) {
        int x = list[i];
        for (int j = start[q]; j < start[q + 1]; ++j) {
          int y = list[j];
          int lo = std::min(x, y), hi = std::max(x, y);
          std::uint8_t& m = s.marked[lo * n + hi];
          if (m) continue;
          m = 1;
          if (++marked == total) return true;
          s.queue[tail++] = static_cast<std::uint16_t>(lo * n + hi);
        }
      }
    }
  }
  return false;
}

bool is_synchronizing(const Automaton& a) { return is_synchronizing(a.n(), a.k(), a.table()); }

std::optional<std::vector<int>> shortest_reset_word(const Automaton& a) {
  const int n = a.n(), k = a.k();
  if (n > kMaxSubsetStates) {
    throw Error(ErrorCode::kSizeLimit, "subset search supports at most " + std::to_string(kMaxSubsetStates) + " states");
  }
  using Mask = std::uint32_t;
  const Mask full = (n == 32) ? ~Mask{0} : (Mask{1} << n) - 1;
  if (n == 1) return std::vector<int>{};

  const std::size_t space = std::size_t{1} << n;
  constexpr Mask kUnseen = ~Mask{0};
  std::vector<Mask> parent(space, kUnseen);
  std::vector<std::uint8_t> letter(space, 0);
  std::vector<Mask> queue;
  queue.reserve(1024);
  queue.push_back(full);
  parent[full] = full;

  for (std::size_t head = 0; head < queue.size(); ++head) {
    Mask cur = queue[head];
    for (int c = 0; c < k; ++c) {
      Mask img = 0;
      for (Mask rest = cur; rest != 0; rest &= rest - 1) {
        img |= Mask{1} << a.next(__builtin_ctz(rest), c);
      }
      if (parent[img] != kUnseen) continue;
      parent[img] = cur;
      letter[img] = static_cast<std::uint8_t>(c);
      if ((img & (img - 1)) == 0) {
        std::vector<int> word;
        for (Mask m = img; m != full; m = parent[m]) word.push_back(letter[m]);
        std::reverse(word.begin(), word.end());
        return word;
      }
      queue.push_back(img);
    }
  }
  return std::nullopt;
}

std::optional<int> reset_threshold(const Automaton& a) {
  auto word = shortest_reset_word(a);
  if (!word) return std::nullopt;
  return static_cast<int>(word->size());
}

std::vector<int> apply_word(const Automaton& a, std::span<const int> word) {
  std::vector<bool> in(a.n(), true);
  for (int c : word) {
    std::vector<bool> next(a.n(), false);
    for (int q = 0; q < a.n(); ++q) {
      if (in[q]) next[a.next(q, c)] = true;
    }
    in = std::move(next);
  }
  std::vector<int> out;
  for (int q = 0; q < a.n(); ++q) {
    if (in[q]) out.push_back(q);
  }
  return out;
}

}  // namespace synccensus
