#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "core/digraph.hpp"
#include "core/numeric.hpp"

namespace synccensus {

enum class Family { kCerny, kG30, kGnk, kHdnk };

struct FamilySpec {
  Family family;
  int n = 0;
  int k = 0;
  int d = 0;
};

std::optional<Family> parse_family(std::string_view name);
std::string family_name(Family f);

/// Cerny digraph: vertex i < n-1 goes to {i, i+1}; vertex n-1 goes to {0, 0}.
Digraph cerny_digraph(int n);

/// The 6-vertex 2-out-regular digraph with 30 synchronizing colorings of 64.
Digraph g30();

/// n > 3, k >= 2: edges (0,1) and (1,2) once, (1,1) and (0,2) k-1 times, and a
/// k-fold path 2 -> 3 -> ... -> n-1 -> 0.
Digraph gnk(int n, int k);

/// d >= 1, n >= 3d, k >= 2: (i,i+1) with multiplicity k-1 for i < 2d and k for
/// 2d <= i <= n-1 (the last one wrapping to 0), a loop on every 2i+1 and an
/// edge (2i, 2i+2) for i < d.
Digraph hdnk(int d, int n, int k);

/// Throws Error(kDomain) when the parameters are outside the family's domain.
Digraph construct(const FamilySpec& spec);

/// Closed-form synchronizing ratio of the family member.
Rational expected_ratio(const FamilySpec& spec);

}  // namespace synccensus
