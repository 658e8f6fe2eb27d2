#include "core/canonical.hpp"

#include <algorithm>
#include <array>
#include <cstring>

#include "core/error.hpp"
#include "core/refine.hpp"

namespace synccensus {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

struct BestLeaf {
  const Digraph& d;
  int n;
  int k;
  bool found = false;
  std::array<Vertex, kMaxVertices * kMaxDegree> best{};
  detail::Coloring best_labels{};
  std::uint64_t ties = 0;

  void operator()(const detail::Coloring& labels) {
    std::array<int, detail::kRefineMaxVertices> inverse{};
    for (int v = 0; v < n; ++v) inverse[labels[v]] = v;
    std::array<Vertex, kMaxVertices * kMaxDegree> cand;
    // 0: equal so far, -1: already smaller, +1 larger (abandon).
    int state = found ? 0 : -1;
    for (int i = 0; i < n; ++i) {
      Vertex* row = cand.data() + i * k;
      auto src = d.dests(inverse[i]);
      for (int j = 0; j < k; ++j) {
        Vertex x = labels[src[j]];
        int p = j - 1;
        while (p >= 0 && row[p] > x) {
          row[p + 1] = row[p];
          --p;
        }
        row[p + 1] = x;
      }
      if (state == 0) {
        int c = std::memcmp(row, best.data() + i * k, static_cast<std::size_t>(k));
        if (c > 0) return;
        if (c < 0) state = -1;
      }
    }
    if (state == 0) {
      ++ties;
      return;
    }
    found = true;
    ties = 1;
    std::copy_n(cand.begin(), n * k, best.begin());
    best_labels = labels;
  }
};

}  // namespace

CanonicalKey::CanonicalKey(std::string_view bytes) {
  if (bytes.size() > kCapacity) throw Error(ErrorCode::kInvalidArgument, "canonical key too long");
  size_ = static_cast<std::uint8_t>(bytes.size());
  std::copy(bytes.begin(), bytes.end(), bytes_.begin());
}

std::string CanonicalKey::hex() const {
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (unsigned char c : bytes()) {
    out.push_back(kHexDigits[c >> 4]);
    out.push_back(kHexDigits[c & 15]);
  }
  return out;
}

CanonicalKey CanonicalKey::from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw Error(ErrorCode::kParse, "invalid hex digit in canonical key");
  };
  if (hex.size() % 2 != 0) throw Error(ErrorCode::kParse, "canonical key hex has odd length");
  std::string bytes;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    bytes.push_back(static_cast<char>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
  }
  return CanonicalKey(bytes);
}

namespace {

BestLeaf search_canonical(const Digraph& d) {
  const int n = d.n(), k = d.k();
  if (n > kMaxCanonicalVertices) {
    throw Error(ErrorCode::kSizeLimit, "canonical form supports at most " + std::to_string(kMaxCanonicalVertices) + " vertices");
  }
  detail::Matrix g;
  g.n = n;
  std::array<int, kMaxVertices> in_degree{};
  for (int v = 0; v < n; ++v) {
    for (Vertex w : d.dests(v)) {
      ++g.m[v][w];
      ++in_degree[w];
    }
  }
  // (loop count, multiplicity profile descending, in-degree)
  using Invariant = std::array<std::uint8_t, 2 + kMaxDegree>;
  std::array<Invariant, detail::kRefineMaxVertices> inv{};
  for (int v = 0; v < n; ++v) {
    Invariant& key = inv[v];
    key[0] = static_cast<std::uint8_t>(g.m[v][v]);
    std::array<std::uint8_t, kMaxDegree> profile{};
    int count = 0;
    for (int w = 0; w < n; ++w) {
      if (g.m[v][w] != 0) profile[count++] = g.m[v][w];
    }
    std::sort(profile.begin(), profile.begin() + count, std::greater<>());
    std::copy(profile.begin(), profile.end(), key.begin() + 1);
    key[1 + kMaxDegree] = static_cast<std::uint8_t>(in_degree[v]);
  }
  detail::Coloring colors{};
  int cells = detail::rank_invariants(inv, n, colors);

  BestLeaf leaf{d, n, k};
  detail::search_leaves(g, colors, cells, leaf);
  return leaf;
}

Digraph digraph_from_table(int n, int k, const Vertex* table) {
  Digraph out(n, k);
  for (int i = 0; i < n; ++i) out.set_dests(i, std::span<const Vertex>(table + i * k, k));
  return out;
}

}  // namespace

Digraph canonical_digraph(const Digraph& d) {
  BestLeaf leaf = search_canonical(d);
  return digraph_from_table(d.n(), d.k(), leaf.best.data());
}

CanonicalForm canonical_form(const Digraph& d) {
  const int n = d.n(), k = d.k();
  BestLeaf leaf = search_canonical(d);
  CanonicalForm out{Digraph(n, k), std::vector<int>(n), leaf.ties};
  for (int v = 0; v < n; ++v) out.labeling[v] = leaf.best_labels[v];
  out.digraph = digraph_from_table(n, k, leaf.best.data());
  return out;
}

CanonicalKey raw_key(const Digraph& d) {
  std::array<char, CanonicalKey::kCapacity> bytes;
  bytes[0] = static_cast<char>(d.n());
  bytes[1] = static_cast<char>(d.k());
  auto flat = d.flat();
  std::copy(flat.begin(), flat.end(), bytes.begin() + 2);
  return CanonicalKey(std::string_view(bytes.data(), 2 + flat.size()));
}

CanonicalKey canonical_key(const Digraph& d) { return raw_key(canonical_digraph(d)); }

Digraph digraph_of_key(const CanonicalKey& key) {
  std::string_view b = key.bytes();
  if (b.size() < 2) throw Error(ErrorCode::kParse, "canonical key too short");
  int n = static_cast<unsigned char>(b[0]), k = static_cast<unsigned char>(b[1]);
  if (b.size() != 2 + static_cast<std::size_t>(n) * k) throw Error(ErrorCode::kParse, "canonical key length mismatch");
  std::vector<std::vector<int>> rows(n);
  for (int v = 0; v < n; ++v) {
    for (int j = 0; j < k; ++j) rows[v].push_back(static_cast<unsigned char>(b[2 + v * k + j]));
  }
  if (auto violation = validate(n, k, rows)) throw Error(ErrorCode::kParse, "canonical key: " + *violation);
  return Digraph::from_rows(n, k, rows);
}

Digraph relabel(const Digraph& d, std::span<const int> new_index) {
  const int n = d.n(), k = d.k();
  if (static_cast<int>(new_index.size()) != n) throw Error(ErrorCode::kInvalidArgument, "relabel: permutation size mismatch");
  std::vector<bool> used(n, false);
  for (int x : new_index) {
    if (x < 0 || x >= n || used[x]) throw Error(ErrorCode::kInvalidArgument, "relabel: not a permutation");
    used[x] = true;
  }
  Digraph out(n, k);
  std::array<Vertex, kMaxDegree> row{};
  for (int v = 0; v < n; ++v) {
    auto src = d.dests(v);
    for (int j = 0; j < k; ++j) row[j] = static_cast<Vertex>(new_index[src[j]]);
    out.set_dests(new_index[v], std::span<const Vertex>(row.data(), k));
  }
  return out;
}

}  // namespace synccensus
