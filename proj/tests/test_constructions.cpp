#include <doctest.h>

#include "core/analysis.hpp"
#include "core/census.hpp"
#include "core/constructions.hpp"
#include "core/error.hpp"
#include "oracles.hpp"

using namespace synccensus;

TEST_CASE("family names") {
  CHECK(parse_family("cerny") == Family::kCerny);
  CHECK(parse_family("g30") == Family::kG30);
  CHECK(parse_family("gnk") == Family::kGnk);
  CHECK(parse_family("hdnk") == Family::kHdnk);
  CHECK_FALSE(parse_family("nope").has_value());
  for (Family f : {Family::kCerny, Family::kG30, Family::kGnk, Family::kHdnk}) CHECK(parse_family(family_name(f)) == f);
}

TEST_CASE("constructions are primitive k-out-regular digraphs") {
  CHECK(g30().n() == 6);
  CHECK(g30().k() == 2);
  for (int n = 2; n <= 10; ++n) CHECK(is_primitive(cerny_digraph(n)));
  for (int n = 4; n <= 8; ++n)
    for (int k = 2; k <= 4; ++k) CHECK(is_primitive(gnk(n, k)));
  for (int d = 1; d <= 3; ++d)
    for (int n = 3 * d; n <= 3 * d + 4; ++n)
      for (int k = 2; k <= 3; ++k) CHECK(is_primitive(hdnk(d, n, k)));
}

TEST_CASE("small members agree with the brute-force census") {
  auto naive_ratio = [](const Digraph& d) {
    u128 total = 1;
    for (int v = 0; v < d.n(); ++v) total *= factorial(d.k());
    return Rational(oracle::naive_sync_colorings(d.rows()), total);
  };
  CHECK(naive_ratio(g30()) == Rational(30, 64));
  CHECK(naive_ratio(cerny_digraph(4)) == Rational(1, 1));
  CHECK(naive_ratio(gnk(4, 2)) == expected_ratio({Family::kGnk, 4, 2, 0}));
  CHECK(naive_ratio(gnk(5, 3)) == expected_ratio({Family::kGnk, 5, 3, 0}));
  CHECK(naive_ratio(hdnk(1, 4, 2)) == expected_ratio({Family::kHdnk, 4, 2, 1}));
  CHECK(naive_ratio(hdnk(2, 6, 2)) == expected_ratio({Family::kHdnk, 6, 2, 2}));
}

TEST_CASE("closed-form ratios") {
  CHECK(expected_ratio({Family::kG30, 0, 0, 0}) == Rational(15, 32));
  CHECK(expected_ratio({Family::kCerny, 7, 2, 0}) == Rational(1, 1));
  CHECK(expected_ratio({Family::kGnk, 6, 3, 0}) == Rational(2, 3));
  CHECK(expected_ratio({Family::kHdnk, 7, 3, 2}) == Rational(8, 9));
}

TEST_CASE("parameter domains") {
  auto code = [](FamilySpec s) {
    try {
      construct(s);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternal;
  };
  CHECK(code({Family::kGnk, 3, 2, 0}) == ErrorCode::kDomain);
  CHECK(code({Family::kGnk, 5, 1, 0}) == ErrorCode::kDomain);
  CHECK(code({Family::kHdnk, 5, 2, 2}) == ErrorCode::kDomain);
  CHECK(code({Family::kHdnk, 5, 2, 0}) == ErrorCode::kDomain);
  CHECK(code({Family::kCerny, 1, 2, 0}) == ErrorCode::kDomain);
  CHECK_NOTHROW(construct({Family::kGnk, 4, 2, 0}));
}
