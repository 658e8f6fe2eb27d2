#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/digraph.hpp"

namespace synccensus {

inline constexpr int kMaxCanonicalVertices = 9;

/// Byte string identifying an isomorphism class: n, k, then the flattened
/// destination rows of the canonical relabeling.
class CanonicalKey {
 public:
  static constexpr std::size_t kCapacity = 2 + kMaxVertices * kMaxDegree;

  CanonicalKey() = default;
  explicit CanonicalKey(std::string_view bytes);

  std::string_view bytes() const { return {reinterpret_cast<const char*>(bytes_.data()), size_}; }
  std::string hex() const;
  static CanonicalKey from_hex(std::string_view hex);

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;

 private:
  std::uint8_t size_ = 0;
  std::array<std::uint8_t, kCapacity> bytes_{};
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const { return std::hash<std::string_view>{}(k.bytes()); }
};

struct CanonicalForm {
  Digraph digraph;              // the canonical relabeling
  std::vector<int> labeling;    // original vertex -> canonical index
  std::uint64_t automorphisms;  // order of the automorphism group
};

/// Canonical relabeling: the lexicographically least flattened destination
/// table over the leaves of an individualization-refinement search seeded
/// with (loop count, multiplicity profile, in-degree) vertex classes.
/// Throws Error(kSizeLimit) for n > kMaxCanonicalVertices.
CanonicalForm canonical_form(const Digraph& d);
Digraph canonical_digraph(const Digraph& d);
CanonicalKey canonical_key(const Digraph& d);

/// Key of a digraph taken as-is (no relabeling).
CanonicalKey raw_key(const Digraph& d);
Digraph digraph_of_key(const CanonicalKey& key);

/// new_index[v] is the label vertex v receives.
Digraph relabel(const Digraph& d, std::span<const int> new_index);

}  // namespace synccensus
