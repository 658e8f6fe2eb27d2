#include <doctest.h>

#include <random>

#include "core/digraph.hpp"
#include "core/error.hpp"

using namespace synccensus;

namespace {
ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kInternal;
}
}  // namespace

TEST_CASE("text format round trip") {
  const char* text = "# two vertices\n2 2\n1 2\n\n1 1\n";
  Digraph d = parse_digraph(text);
  CHECK(d.n() == 2);
  CHECK(d.k() == 2);
  CHECK(d.rows() == std::vector<std::vector<int>>{{0, 1}, {0, 0}});
  CHECK(format_digraph(d) == "2 2\n1 2\n1 1\n");
  CHECK(parse_digraph(format_digraph(d)) == d);
}

TEST_CASE("json format round trip") {
  Digraph d = Digraph::from_rows(3, 2, {{1, 2}, {0, 0}, {0, 2}});
  std::string j = format_digraph_json(d);
  CHECK(j.find("\"dests\"") != std::string::npos);
  CHECK(parse_digraph_json(j) == d);
}

TEST_CASE("parse diagnostics carry a location") {
  try {
    parse_digraph("2 2\n1 2\n1 x\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK(code_of([] { parse_digraph("2 2\n1 3\n1 1\n"); }) == ErrorCode::kParse);  // out of range
  CHECK(code_of([] { parse_digraph("2 2\n2 1\n1 1\n"); }) == ErrorCode::kParse);  // unsorted row
  CHECK(code_of([] { parse_digraph("2 2\n1 2\n"); }) == ErrorCode::kParse);       // missing row
  CHECK(code_of([] { parse_digraph("2 2\n1 2 2\n1 1\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse_digraph("16 1\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse_digraph_json("{\"n\":1}"); }) == ErrorCode::kParse);
}

TEST_CASE("validation") {
  CHECK_FALSE(validate(2, 1, {{1}, {0}}).has_value());
  CHECK(validate(2, 1, {{1}, {2}}).has_value());
  CHECK(validate(2, 2, {{1, 0}, {0, 0}}).has_value());
  CHECK(validate(kMaxVertices + 1, 1, {}).has_value());
  CHECK(validate(2, kMaxDegree + 1, {}).has_value());
  CHECK_THROWS_AS(Digraph::from_rows(2, 1, {{1}}), Error);
}

TEST_CASE("rows are kept sorted and multiplicities reported") {
  Digraph d(3, 3);
  std::vector<Vertex> row{2, 0, 2};
  d.set_dests(0, row);
  CHECK(d.rows()[0] == std::vector<int>{0, 2, 2});
  CHECK(d.multiplicities(0) == std::vector<std::pair<int, int>>{{0, 1}, {2, 2}});
  CHECK(d.loop_count(0) == 1);
  CHECK(d.loop_count(1) == 0);
}

TEST_CASE("automaton and its digraph") {
  Automaton a = Automaton::from_rows({{1, 0}, {1, 1}});
  CHECK(a.n() == 2);
  CHECK(a.k() == 2);
  CHECK(a.next(0, 0) == 1);
  CHECK(digraph_of_automaton(a) == Digraph::from_rows(2, 2, {{0, 1}, {1, 1}}));
}

TEST_CASE("formatting is a fixed point of parsing") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    int n = 1 + static_cast<int>(rng() % kMaxVertices);
    int k = 1 + static_cast<int>(rng() % kMaxDegree);
    std::vector<std::vector<int>> rows(n, std::vector<int>(k));
    for (auto& r : rows) {
      for (int& w : r) w = static_cast<int>(rng() % n);
      std::sort(r.begin(), r.end());
    }
    Digraph d = Digraph::from_rows(n, k, rows);
    std::string text = format_digraph(d);
    REQUIRE(format_digraph(parse_digraph(text)) == text);
    REQUIRE(parse_digraph_json(format_digraph_json(d)) == d);
  }
}
