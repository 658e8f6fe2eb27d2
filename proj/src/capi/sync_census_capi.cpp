#include "sync_census/sync_census.h"

#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "core/analysis.hpp"
#include "core/batch.hpp"
#include "core/canonical.hpp"
#include "core/census.hpp"
#include "core/constructions.hpp"
#include "core/digraph.hpp"
#include "core/error.hpp"
#include "core/sync.hpp"

using namespace synccensus;

struct sc_digraph {
  Digraph value;
};

struct sc_automaton {
  Automaton value;
};

struct sc_census {
  CensusResult value;
};

namespace {

thread_local std::string last_error;

sc_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return SC_ERR_INVALID_ARGUMENT;
    case ErrorCode::kParse: return SC_ERR_PARSE;
    case ErrorCode::kDomain: return SC_ERR_DOMAIN;
    case ErrorCode::kBudget: return SC_ERR_BUDGET;
    case ErrorCode::kSizeLimit: return SC_ERR_SIZE_LIMIT;
    case ErrorCode::kIo: return SC_ERR_IO;
    case ErrorCode::kSelfCheck: return SC_ERR_SELF_CHECK;
    case ErrorCode::kInternal: return SC_ERR_INTERNAL;
  }
  return SC_ERR_INTERNAL;
}

sc_status fail(sc_status s, std::string message) {
  last_error = std::move(message);
  return s;
}

template <class Fn>
sc_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SC_ERR_INTERNAL, e.what());
  }
}

char* duplicate(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, s.data(), s.size() + 1);
  return p;
}

#define SC_REQUIRE(cond) \
  if (!(cond)) return fail(SC_ERR_INVALID_ARGUMENT, "null or invalid argument: " #cond)

sc_status emit_digraph(Digraph d, sc_digraph** out) {
  *out = new sc_digraph{std::move(d)};
  return SC_OK;
}

RunOptions run_options(const sc_run_options* o) {
  RunOptions r;
  r.n = o->n;
  r.k = o->k;
  if (o->mode != SC_ENUM_SEEDED && o->mode != SC_ENUM_DIRECT) throw Error(ErrorCode::kInvalidArgument, "unknown enumeration mode");
  r.mode = o->mode == SC_ENUM_DIRECT ? EnumerationMode::kDirect : EnumerationMode::kSeeded;
  if (o->workers < 1) throw Error(ErrorCode::kInvalidArgument, "workers must be at least 1");
  r.workers = o->workers;
  r.budget_automata = o->budget_automata;
  r.max_candidates = o->max_candidates;
  r.with_census = o->with_census != 0;
  r.out = o->out != nullptr ? o->out : "";
  r.resume = o->resume != 0;
  r.stop_after_chunks = o->stop_after_chunks;
  r.checkpoint_seconds = o->checkpoint_seconds;
  r.random.n = o->n;
  r.random.k = o->k;
  r.random.samples = o->samples;
  r.random.seed = o->seed;
  if (o->filter != SC_FILTER_ALL && o->filter != SC_FILTER_PRIMITIVE) throw Error(ErrorCode::kInvalidArgument, "unknown sample filter");
  r.random.filter = o->filter == SC_FILTER_PRIMITIVE ? SampleFilter::kPrimitive : SampleFilter::kAll;
  r.random.rejection_cap = o->rejection_cap;
  return r;
}

void fill(const RunSummary& s, sc_run_summary* out) {
  if (out == nullptr) return;
  out->chunk_count = s.chunk_count;
  out->completed_chunks = s.completed_chunks;
  out->records = s.records;
  out->complete = s.complete ? 1 : 0;
}

FamilySpec family_spec(const char* family, int n, int k, int d) {
  auto f = parse_family(family);
  if (!f) throw Error(ErrorCode::kInvalidArgument, std::string("unknown family '") + family + "'");
  return FamilySpec{*f, n, k, d};
}

}  // namespace

extern "C" {

SC_API const char* sc_version(void) { return "0.1.0"; }

SC_API const char* sc_last_error(void) { return last_error.c_str(); }

SC_API const char* sc_status_name(sc_status status) {
  switch (status) {
    case SC_OK: return "ok";
    case SC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SC_ERR_PARSE: return "parse error";
    case SC_ERR_DOMAIN: return "domain error";
    case SC_ERR_BUDGET: return "budget exceeded";
    case SC_ERR_SIZE_LIMIT: return "size limit exceeded";
    case SC_ERR_IO: return "i/o error";
    case SC_ERR_SELF_CHECK: return "self-check failed";
    case SC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

SC_API void sc_string_free(char* s) { std::free(s); }

SC_API sc_status sc_digraph_parse(const char* text, sc_digraph** out) {
  SC_REQUIRE(text != nullptr && out != nullptr);
  return guarded([&] { return emit_digraph(parse_digraph(text), out); });
}

SC_API sc_status sc_digraph_parse_json(const char* text, sc_digraph** out) {
  SC_REQUIRE(text != nullptr && out != nullptr);
  return guarded([&] { return emit_digraph(parse_digraph_json(text), out); });
}

SC_API sc_status sc_digraph_load(const char* path, sc_digraph** out) {
  SC_REQUIRE(path != nullptr && out != nullptr);
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail(SC_ERR_IO, std::string("cannot read ") + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return emit_digraph(parse_digraph_json(text), out);
    return emit_digraph(parse_digraph(text), out);
  });
}

SC_API sc_status sc_digraph_from_dests(int n, int k, const int* dests, sc_digraph** out) {
  SC_REQUIRE(out != nullptr && n >= 0 && k >= 0 && (dests != nullptr || n * k == 0));
  return guarded([&] {
    std::vector<std::vector<int>> rows(n);
    for (int v = 0; v < n; ++v) rows[v].assign(dests + v * k, dests + (v + 1) * k);
    for (auto& r : rows) std::sort(r.begin(), r.end());
    return emit_digraph(Digraph::from_rows(n, k, rows), out);
  });
}

SC_API sc_status sc_digraph_construct(const char* family, int n, int k, int d, sc_digraph** out) {
  SC_REQUIRE(family != nullptr && out != nullptr);
  return guarded([&] { return emit_digraph(construct(family_spec(family, n, k, d)), out); });
}

SC_API void sc_digraph_free(sc_digraph* g) { delete g; }

SC_API int sc_digraph_vertices(const sc_digraph* g) { return g != nullptr ? g->value.n() : 0; }

SC_API int sc_digraph_degree(const sc_digraph* g) { return g != nullptr ? g->value.k() : 0; }

SC_API sc_status sc_digraph_dests(const sc_digraph* g, int* out, size_t len) {
  SC_REQUIRE(g != nullptr && out != nullptr);
  auto flat = g->value.flat();
  if (len < flat.size()) return fail(SC_ERR_INVALID_ARGUMENT, "destination buffer too small");
  std::copy(flat.begin(), flat.end(), out);
  return SC_OK;
}

SC_API sc_status sc_digraph_format(const sc_digraph* g, int json, char** out) {
  SC_REQUIRE(g != nullptr && out != nullptr);
  return guarded([&] {
    *out = duplicate(json != 0 ? format_digraph_json(g->value) : format_digraph(g->value));
    return SC_OK;
  });
}

SC_API sc_status sc_digraph_canonical(const sc_digraph* g, sc_digraph** out) {
  SC_REQUIRE(g != nullptr && out != nullptr);
  return guarded([&] { return emit_digraph(canonical_digraph(g->value), out); });
}

SC_API sc_status sc_digraph_canonical_key(const sc_digraph* g, char** out_hex) {
  SC_REQUIRE(g != nullptr && out_hex != nullptr);
  return guarded([&] {
    *out_hex = duplicate(canonical_key(g->value).hex());
    return SC_OK;
  });
}

SC_API sc_status sc_digraph_automorphisms(const sc_digraph* g, uint64_t* out) {
  SC_REQUIRE(g != nullptr && out != nullptr);
  return guarded([&] {
    *out = canonical_form(g->value).automorphisms;
    return SC_OK;
  });
}

SC_API sc_status sc_digraph_analyze(const sc_digraph* g, sc_analysis* out) {
  SC_REQUIRE(g != nullptr && out != nullptr);
  return guarded([&] {
    const Digraph& d = g->value;
    SccDecomposition scc = decompose_scc(d);
    const bool sc = scc.components.size() == 1;
    out->strongly_connected = sc ? 1 : 0;
    out->cycle_gcd = sc ? cycle_gcd(d) : 0;
    out->aperiodic = sc ? (out->cycle_gcd == 1 ? 1 : 0) : -1;
    out->primitive = sc && out->cycle_gcd == 1 ? 1 : 0;
    out->scc_count = static_cast<int>(scc.components.size());
    out->sink_count = static_cast<int>(scc.sink_components.size());
    out->sink_size = scc.sink_components.size() == 1
                         ? static_cast<int>(scc.components[scc.sink_components[0]].size())
                         : 0;
    return SC_OK;
  });
}

SC_API sc_status sc_digraph_sink_reduction(const sc_digraph* g, sc_digraph** out) {
  SC_REQUIRE(g != nullptr && out != nullptr);
  return guarded([&] {
    auto r = sink_reduction(g->value);
    if (!r) return fail(SC_ERR_DOMAIN, "digraph has more than one sink component");
    return emit_digraph(r->induced, out);
  });
}

SC_API void sc_census_options_init(sc_census_options* opts) {
  if (opts == nullptr) return;
  opts->mode = SC_CENSUS_REDUCED;
  opts->budget_automata = kDefaultAutomatonBudget;
  opts->workers = 1;
}

SC_API sc_status sc_census_run(const sc_digraph* g, const sc_census_options* opts, sc_census** out) {
  SC_REQUIRE(g != nullptr && out != nullptr);
  return guarded([&] {
    sc_census_options o;
    sc_census_options_init(&o);
    if (opts != nullptr) o = *opts;
    if (o.workers < 1) return fail(SC_ERR_INVALID_ARGUMENT, "workers must be at least 1");
    CensusOptions c;
    c.budget = o.budget_automata;
    c.workers = o.workers;
    switch (o.mode) {
      case SC_CENSUS_REDUCED:
        *out = new sc_census{census(g->value, c)};
        return SC_OK;
      case SC_CENSUS_FULL:
        c.mode = CensusMode::kFull;
        *out = new sc_census{census(g->value, c)};
        return SC_OK;
      case SC_CENSUS_VIA_SINK:
        *out = new sc_census{count_via_sink(g->value, c)};
        return SC_OK;
      default:
        return fail(SC_ERR_INVALID_ARGUMENT, "unknown census mode");
    }
  });
}

SC_API void sc_census_free(sc_census* c) { delete c; }

SC_API sc_status sc_census_get(const sc_census* c, sc_census_field field, char** out) {
  SC_REQUIRE(c != nullptr && out != nullptr);
  return guarded([&] {
    const CensusResult& r = c->value;
    std::string s;
    switch (field) {
      case SC_FIELD_SYNC_COLORINGS: s = to_decimal(r.sync_colorings); break;
      case SC_FIELD_TOTAL_COLORINGS: s = to_decimal(r.total_colorings); break;
      case SC_FIELD_DISTINCT_AUTOMATA: s = to_decimal(r.distinct_automata); break;
      case SC_FIELD_WEIGHT: s = to_decimal(r.weight); break;
      case SC_FIELD_SYNC_AUTOMATA: s = to_decimal(r.sync_automata); break;
      case SC_FIELD_RATIO: s = r.ratio().str(); break;
      default: return fail(SC_ERR_INVALID_ARGUMENT, "unknown census field");
    }
    *out = duplicate(s);
    return SC_OK;
  });
}

SC_API int sc_census_totally_synchronizing(const sc_census* c) {
  return c != nullptr && c->value.totally_synchronizing() ? 1 : 0;
}

SC_API sc_status sc_census_to_json(const sc_census* c, char** out) {
  SC_REQUIRE(c != nullptr && out != nullptr);
  return guarded([&] {
    *out = duplicate(census_to_json(c->value));
    return SC_OK;
  });
}

SC_API sc_status sc_digraph_totally_synchronizing(const sc_digraph* g, uint64_t budget_automata, int* out) {
  SC_REQUIRE(g != nullptr && out != nullptr);
  return guarded([&] {
    *out = is_totally_synchronizing(g->value, budget_automata) ? 1 : 0;
    return SC_OK;
  });
}

SC_API sc_status sc_family_expected_ratio(const char* family, int n, int k, int d, char** out) {
  SC_REQUIRE(family != nullptr && out != nullptr);
  return guarded([&] {
    *out = duplicate(expected_ratio(family_spec(family, n, k, d)).str());
    return SC_OK;
  });
}

SC_API sc_status sc_automaton_create(int n, int k, const int* table, sc_automaton** out) {
  SC_REQUIRE(out != nullptr && n > 0 && k > 0 && table != nullptr);
  return guarded([&] {
    if (n > Automaton::kMaxStates || k > Automaton::kMaxLetters) {
      return fail(SC_ERR_SIZE_LIMIT, "automaton exceeds 255 states or 16 letters");
    }
    std::vector<Vertex> t(static_cast<std::size_t>(n) * k);
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (table[i] < 0 || table[i] >= n) return fail(SC_ERR_INVALID_ARGUMENT, "transition target out of range");
      t[i] = static_cast<Vertex>(table[i]);
    }
    *out = new sc_automaton{Automaton(n, k, std::move(t))};
    return SC_OK;
  });
}

SC_API void sc_automaton_free(sc_automaton* a) { delete a; }

SC_API sc_status sc_automaton_is_synchronizing(const sc_automaton* a, int* out) {
  SC_REQUIRE(a != nullptr && out != nullptr);
  return guarded([&] {
    *out = is_synchronizing(a->value) ? 1 : 0;
    return SC_OK;
  });
}

SC_API sc_status sc_automaton_shortest_reset_word(const sc_automaton* a, int* word, size_t cap, size_t* len,
                                                  int* synchronizing) {
  SC_REQUIRE(a != nullptr && len != nullptr && synchronizing != nullptr);
  return guarded([&] {
    auto w = shortest_reset_word(a->value);
    *synchronizing = w ? 1 : 0;
    *len = w ? w->size() : 0;
    if (!w) return SC_OK;
    if (w->size() > cap || (word == nullptr && !w->empty())) return fail(SC_ERR_INVALID_ARGUMENT, "word buffer too small");
    std::copy(w->begin(), w->end(), word);
    return SC_OK;
  });
}

SC_API void sc_run_options_init(sc_run_options* opts) {
  if (opts == nullptr) return;
  RunOptions d;
  opts->n = 0;
  opts->k = 0;
  opts->mode = SC_ENUM_SEEDED;
  opts->workers = 1;
  opts->budget_automata = d.budget_automata;
  opts->max_candidates = d.max_candidates;
  opts->with_census = 1;
  opts->out = nullptr;
  opts->resume = 0;
  opts->stop_after_chunks = 0;
  opts->checkpoint_seconds = d.checkpoint_seconds;
  opts->samples = 0;
  opts->seed = 0;
  opts->filter = SC_FILTER_ALL;
  opts->rejection_cap = d.random.rejection_cap;
}

SC_API sc_status sc_run_enumerate(const sc_run_options* opts, sc_write_fn write, void* user, sc_run_summary* summary) {
  SC_REQUIRE(opts != nullptr && (opts->out != nullptr || write != nullptr));
  return guarded([&] {
    RunSummary s = run_enumerate(run_options(opts), [&](std::string_view text) { write(text.data(), text.size(), user); });
    fill(s, summary);
    return SC_OK;
  });
}

SC_API sc_status sc_run_stats(const sc_run_options* opts, int format, char** report, sc_run_summary* summary) {
  SC_REQUIRE(opts != nullptr);
  return guarded([&] {
    ClassOutcome r = run_stats(run_options(opts));
    fill(r.summary, summary);
    if (report != nullptr) *report = duplicate(format == SC_FORMAT_JSON ? stats_json(r.result.stats) : stats_csv(r.result.stats));
    return SC_OK;
  });
}

SC_API sc_status sc_run_gaps(const sc_run_options* opts, int format, char** report, sc_run_summary* summary) {
  SC_REQUIRE(opts != nullptr);
  return guarded([&] {
    ClassOutcome r = run_gaps(run_options(opts));
    fill(r.summary, summary);
    if (report != nullptr) *report = duplicate(format == SC_FORMAT_JSON ? gaps_json(r.result.gaps) : gaps_csv(r.result.gaps));
    return SC_OK;
  });
}

SC_API sc_status sc_run_random(const sc_run_options* opts, int format, char** report, sc_run_summary* summary) {
  SC_REQUIRE(opts != nullptr);
  return guarded([&] {
    RandomOutcome r = run_random(run_options(opts));
    fill(r.summary, summary);
    if (report != nullptr) *report = duplicate(format == SC_FORMAT_JSON ? random_json(r.report) : random_csv(r.report));
    return SC_OK;
  });
}

}  // extern "C"
