#include "core/constructions.hpp"

#include <algorithm>
#include <vector>

#include "core/error.hpp"

namespace synccensus {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kDomain, what);
}

}  // namespace

std::optional<Family> parse_family(std::string_view name) {
  if (name == "cerny") return Family::kCerny;
  if (name == "g30") return Family::kG30;
  if (name == "gnk") return Family::kGnk;
  if (name == "hdnk") return Family::kHdnk;
  return std::nullopt;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::kCerny: return "cerny";
    case Family::kG30: return "g30";
    case Family::kGnk: return "gnk";
    case Family::kHdnk: return "hdnk";
  }
  return "unknown";
}

Digraph cerny_digraph(int n) {
  require(n >= 2, "cerny requires n >= 2");
  require(n <= kMaxVertices, "cerny: n exceeds vertex limit");
  std::vector<std::vector<int>> rows(n);
  for (int i = 0; i + 1 < n; ++i) rows[i] = {i, i + 1};
  rows[n - 1] = {0, 0};
  return Digraph::from_rows(n, 2, rows);
}

Digraph g30() {
  // 1-indexed: 1->{3,6} 2->{3,6} 3->{2,5} 4->{2,5} 5->{1,4} 6->{1,4}
  return Digraph::from_rows(6, 2, {{2, 5}, {2, 5}, {1, 4}, {1, 4}, {0, 3}, {0, 3}});
}

Digraph gnk(int n, int k) {
  require(n > 3, "gnk requires n > 3");
  require(k >= 2, "gnk requires k >= 2");
  require(n <= kMaxVertices && k <= kMaxDegree, "gnk: parameters exceed size limits");
  std::vector<std::vector<int>> rows(n);
  rows[0].push_back(1);
  rows[0].insert(rows[0].end(), k - 1, 2);
  rows[1].insert(rows[1].end(), k - 1, 1);
  rows[1].push_back(2);
  for (int i = 2; i < n; ++i) rows[i].assign(k, (i + 1) % n);
  for (auto& row : rows) std::sort(row.begin(), row.end());
  return Digraph::from_rows(n, k, rows);
}

Digraph hdnk(int d, int n, int k) {
  require(d >= 1, "hdnk requires d >= 1");
  require(n >= 3 * d, "hdnk requires n >= 3d");
  require(k >= 2, "hdnk requires k >= 2");
  require(n <= kMaxVertices && k <= kMaxDegree, "hdnk: parameters exceed size limits");
  std::vector<std::vector<int>> rows(n);
  for (int i = 0; i < 2 * d; ++i) rows[i].insert(rows[i].end(), k - 1, i + 1);
  for (int i = 2 * d; i < n; ++i) rows[i].assign(k, (i + 1) % n);
  for (int i = 0; i < d; ++i) {
    rows[2 * i + 1].push_back(2 * i + 1);
    rows[2 * i].push_back((2 * i + 2) % n);
  }
  for (auto& row : rows) std::sort(row.begin(), row.end());
  return Digraph::from_rows(n, k, rows);
}

Digraph construct(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::kCerny: return cerny_digraph(spec.n);
    case Family::kG30: return g30();
    case Family::kGnk: return gnk(spec.n, spec.k);
    case Family::kHdnk: return hdnk(spec.d, spec.n, spec.k);
  }
  throw Error(ErrorCode::kDomain, "unknown family");
}

Rational expected_ratio(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::kCerny: return Rational(1, 1);
    case Family::kG30: return Rational(30, 64);
    case Family::kGnk: return Rational(static_cast<u128>(spec.k - 1), static_cast<u128>(spec.k));
    case Family::kHdnk: {
      u128 power = 1;
      for (int i = 0; i < spec.d; ++i) power = checked_mul(power, static_cast<u128>(spec.k));
      return Rational(power - 1, power);
    }
  }
  throw Error(ErrorCode::kDomain, "unknown family");
}

}  // namespace synccensus
