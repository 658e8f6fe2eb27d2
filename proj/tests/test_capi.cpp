// Exercises the shared library only through its public C header.
#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "sync_census/sync_census.h"

namespace {

std::string take(char* s) {
  std::string out = s == nullptr ? "" : s;
  sc_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(sc_version()) == "0.1.0");
  CHECK(std::string(sc_status_name(SC_ERR_BUDGET)) == "budget exceeded");
}

TEST_CASE("digraph round trip through handles") {
  sc_digraph* g = nullptr;
  REQUIRE(sc_digraph_parse("3 2\n2 3\n1 1\n1 3\n", &g) == SC_OK);
  CHECK(sc_digraph_vertices(g) == 3);
  CHECK(sc_digraph_degree(g) == 2);
  int dests[6];
  REQUIRE(sc_digraph_dests(g, dests, 6) == SC_OK);
  CHECK(std::vector<int>(dests, dests + 6) == std::vector<int>{1, 2, 0, 0, 0, 2});
  CHECK(sc_digraph_dests(g, dests, 5) == SC_ERR_INVALID_ARGUMENT);
  char* text = nullptr;
  REQUIRE(sc_digraph_format(g, 0, &text) == SC_OK);
  CHECK(take(text) == "3 2\n2 3\n1 1\n1 3\n");
  REQUIRE(sc_digraph_format(g, 1, &text) == SC_OK);
  std::string json = take(text);
  sc_digraph* h = nullptr;
  REQUIRE(sc_digraph_parse_json(json.c_str(), &h) == SC_OK);
  char* k1 = nullptr;
  char* k2 = nullptr;
  REQUIRE(sc_digraph_canonical_key(g, &k1) == SC_OK);
  REQUIRE(sc_digraph_canonical_key(h, &k2) == SC_OK);
  CHECK(take(k1) == take(k2));
  sc_digraph_free(h);
  sc_digraph_free(g);
}

TEST_CASE("errors carry codes and messages") {
  sc_digraph* g = nullptr;
  CHECK(sc_digraph_parse("2 2\n1 2\n1 x\n", &g) == SC_ERR_PARSE);
  CHECK(g == nullptr);
  CHECK(std::string(sc_last_error()).find("line 3") != std::string::npos);
  CHECK(sc_digraph_construct("gnk", 3, 2, 0, &g) == SC_ERR_DOMAIN);
  CHECK(sc_digraph_construct("bogus", 3, 2, 0, &g) == SC_ERR_INVALID_ARGUMENT);
  CHECK(sc_digraph_parse(nullptr, &g) == SC_ERR_INVALID_ARGUMENT);
  CHECK(sc_digraph_load("/nonexistent/file", &g) == SC_ERR_IO);
  int bad[2] = {0, 5};
  CHECK(sc_digraph_from_dests(2, 1, bad, &g) == SC_ERR_INVALID_ARGUMENT);
  // A success clears the message.
  REQUIRE(sc_digraph_construct("g30", 0, 0, 0, &g) == SC_OK);
  CHECK(std::string(sc_last_error()).empty());
  sc_digraph_free(g);
}

TEST_CASE("analysis and census of G30") {
  sc_digraph* g = nullptr;
  REQUIRE(sc_digraph_construct("g30", 0, 0, 0, &g) == SC_OK);
  sc_analysis a;
  REQUIRE(sc_digraph_analyze(g, &a) == SC_OK);
  CHECK(a.strongly_connected == 1);
  CHECK(a.aperiodic == 1);
  CHECK(a.primitive == 1);
  CHECK(a.sink_count == 1);
  CHECK(a.sink_size == 6);

  for (int mode : {SC_CENSUS_REDUCED, SC_CENSUS_FULL, SC_CENSUS_VIA_SINK}) {
    sc_census_options o;
    sc_census_options_init(&o);
    o.mode = mode;
    sc_census* c = nullptr;
    REQUIRE(sc_census_run(g, &o, &c) == SC_OK);
    char* s = nullptr;
    REQUIRE(sc_census_get(c, SC_FIELD_SYNC_COLORINGS, &s) == SC_OK);
    CHECK(take(s) == "30");
    REQUIRE(sc_census_get(c, SC_FIELD_TOTAL_COLORINGS, &s) == SC_OK);
    CHECK(take(s) == "64");
    REQUIRE(sc_census_get(c, SC_FIELD_RATIO, &s) == SC_OK);
    CHECK(take(s) == "15/32");
    CHECK(sc_census_totally_synchronizing(c) == 0);
    sc_census_free(c);
  }
  sc_census_options tight;
  sc_census_options_init(&tight);
  tight.budget_automata = 5;
  sc_census* c = nullptr;
  CHECK(sc_census_run(g, &tight, &c) == SC_ERR_BUDGET);
  int ts = -1;
  REQUIRE(sc_digraph_totally_synchronizing(g, 1000, &ts) == SC_OK);
  CHECK(ts == 0);
  sc_digraph_free(g);

  char* r = nullptr;
  REQUIRE(sc_family_expected_ratio("hdnk", 6, 2, 2, &r) == SC_OK);
  CHECK(take(r) == "3/4");
}

TEST_CASE("two-cycle analysis reports undefined aperiodicity only when not strongly connected") {
  int cyc[2] = {1, 0};
  sc_digraph* g = nullptr;
  REQUIRE(sc_digraph_from_dests(2, 1, cyc, &g) == SC_OK);
  sc_analysis a;
  REQUIRE(sc_digraph_analyze(g, &a) == SC_OK);
  CHECK(a.aperiodic == 0);
  CHECK(a.cycle_gcd == 2);
  sc_digraph_free(g);
  int split[3] = {0, 1, 2};
  REQUIRE(sc_digraph_from_dests(3, 1, split, &g) == SC_OK);
  REQUIRE(sc_digraph_analyze(g, &a) == SC_OK);
  CHECK(a.aperiodic == -1);
  CHECK(a.sink_count == 3);
  sc_digraph* s = nullptr;
  CHECK(sc_digraph_sink_reduction(g, &s) == SC_ERR_DOMAIN);
  sc_digraph_free(g);
}

TEST_CASE("automata") {
  // Cerny automaton on 4 states.
  int t[8] = {1, 1, 2, 1, 3, 2, 0, 3};
  sc_automaton* a = nullptr;
  REQUIRE(sc_automaton_create(4, 2, t, &a) == SC_OK);
  int sync = 0;
  REQUIRE(sc_automaton_is_synchronizing(a, &sync) == SC_OK);
  CHECK(sync == 1);
  int word[32];
  size_t len = 0;
  REQUIRE(sc_automaton_shortest_reset_word(a, word, 32, &len, &sync) == SC_OK);
  CHECK(len == 9);
  CHECK(sc_automaton_shortest_reset_word(a, word, 3, &len, &sync) == SC_ERR_INVALID_ARGUMENT);
  sc_automaton_free(a);
  int bad[2] = {0, 4};
  CHECK(sc_automaton_create(2, 1, bad, &a) == SC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("batch runs") {
  sc_run_options o;
  sc_run_options_init(&o);
  o.n = 3;
  o.k = 2;
  std::string out;
  sc_run_summary s;
  auto write = [](const char* data, size_t len, void* user) { static_cast<std::string*>(user)->append(data, len); };
  REQUIRE(sc_run_enumerate(&o, write, &out, &s) == SC_OK);
  CHECK(s.records == 12);
  CHECK(s.complete == 1);
  CHECK(std::count(out.begin(), out.end(), '\n') == 12);

  char* report = nullptr;
  o.n = 4;
  REQUIRE(sc_run_stats(&o, SC_FORMAT_CSV, &report, &s) == SC_OK);
  CHECK(take(report).find("2,4,100,8,0.500,14.640,0.915,2.243") != std::string::npos);
  REQUIRE(sc_run_gaps(&o, SC_FORMAT_JSON, &report, &s) == SC_OK);
  CHECK(take(report).find("\"total\": 100") != std::string::npos);

  o.samples = 100;
  o.seed = 3;
  o.filter = SC_FILTER_PRIMITIVE;
  REQUIRE(sc_run_random(&o, SC_FORMAT_CSV, &report, &s) == SC_OK);
  CHECK(take(report).find("2,4,sc-aperiodic,100,3,") != std::string::npos);
  o.workers = 0;
  CHECK(sc_run_random(&o, SC_FORMAT_CSV, &report, &s) == SC_ERR_INVALID_ARGUMENT);
}
