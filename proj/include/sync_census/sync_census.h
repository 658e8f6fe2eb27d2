#ifndef SYNC_CENSUS_SYNC_CENSUS_H
#define SYNC_CENSUS_SYNC_CENSUS_H

#include <stddef.h>
#include <stdint.h>

#if defined(SYNC_CENSUS_BUILDING)
#define SC_API __attribute__((visibility("default")))
#else
#define SC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sc_status {
  SC_OK = 0,
  SC_ERR_INVALID_ARGUMENT = 1,
  SC_ERR_PARSE = 2,
  SC_ERR_DOMAIN = 3,
  SC_ERR_BUDGET = 4,
  SC_ERR_SIZE_LIMIT = 5,
  SC_ERR_IO = 6,
  SC_ERR_SELF_CHECK = 7,
  SC_ERR_INTERNAL = 8
} sc_status;

typedef struct sc_digraph sc_digraph;
typedef struct sc_automaton sc_automaton;
typedef struct sc_census sc_census;

SC_API const char* sc_version(void);
/* Message for the last failing call on this thread; "" if none. */
SC_API const char* sc_last_error(void);
SC_API const char* sc_status_name(sc_status status);
/* Frees strings returned through char** out-parameters. */
SC_API void sc_string_free(char* s);

/* ---- digraphs (n <= 15 vertices, k <= 6 out-edges per vertex) ---- */

/* Text format: "n k" header, then n rows of k destinations (1-indexed, sorted). */
SC_API sc_status sc_digraph_parse(const char* text, sc_digraph** out);
/* JSON format: {"n":..,"k":..,"dests":[[..],..]} with 0-indexed destinations. */
SC_API sc_status sc_digraph_parse_json(const char* text, sc_digraph** out);
/* Reads a file in either format (JSON when the first non-blank byte is '{'). */
SC_API sc_status sc_digraph_load(const char* path, sc_digraph** out);
/* dests: n*k 0-indexed destinations, row-major; rows need not be sorted. */
SC_API sc_status sc_digraph_from_dests(int n, int k, const int* dests, sc_digraph** out);
/* family: "cerny", "g30", "gnk" or "hdnk"; unused parameters are ignored. */
SC_API sc_status sc_digraph_construct(const char* family, int n, int k, int d, sc_digraph** out);
SC_API void sc_digraph_free(sc_digraph* g);

SC_API int sc_digraph_vertices(const sc_digraph* g);
SC_API int sc_digraph_degree(const sc_digraph* g);
/* Copies the n*k sorted 0-indexed destinations into out (capacity len). */
SC_API sc_status sc_digraph_dests(const sc_digraph* g, int* out, size_t len);
SC_API sc_status sc_digraph_format(const sc_digraph* g, int json, char** out);

SC_API sc_status sc_digraph_canonical(const sc_digraph* g, sc_digraph** out);
SC_API sc_status sc_digraph_canonical_key(const sc_digraph* g, char** out_hex);
SC_API sc_status sc_digraph_automorphisms(const sc_digraph* g, uint64_t* out);

typedef struct sc_analysis {
  int strongly_connected;
  int aperiodic;  /* -1 when not strongly connected */
  int primitive;
  int cycle_gcd;  /* 0 when not strongly connected */
  int scc_count;
  int sink_count;
  int sink_size;  /* vertices of the unique sink component, 0 otherwise */
} sc_analysis;

SC_API sc_status sc_digraph_analyze(const sc_digraph* g, sc_analysis* out);
/* The subgraph induced by the unique sink component; SC_ERR_DOMAIN otherwise. */
SC_API sc_status sc_digraph_sink_reduction(const sc_digraph* g, sc_digraph** out);

/* ---- synchronizing colorings ---- */

typedef enum sc_census_mode {
  SC_CENSUS_REDUCED = 0,
  SC_CENSUS_FULL = 1,
  SC_CENSUS_VIA_SINK = 2
} sc_census_mode;

typedef struct sc_census_options {
  int mode;
  uint64_t budget_automata;
  int workers;
} sc_census_options;

typedef enum sc_census_field {
  SC_FIELD_SYNC_COLORINGS = 0,
  SC_FIELD_TOTAL_COLORINGS = 1,
  SC_FIELD_DISTINCT_AUTOMATA = 2,
  SC_FIELD_WEIGHT = 3,
  SC_FIELD_SYNC_AUTOMATA = 4,
  SC_FIELD_RATIO = 5  /* reduced "num/den" */
} sc_census_field;

SC_API void sc_census_options_init(sc_census_options* opts);
SC_API sc_status sc_census_run(const sc_digraph* g, const sc_census_options* opts, sc_census** out);
SC_API void sc_census_free(sc_census* c);
/* Exact values as decimal strings. */
SC_API sc_status sc_census_get(const sc_census* c, sc_census_field field, char** out);
SC_API int sc_census_totally_synchronizing(const sc_census* c);
SC_API sc_status sc_census_to_json(const sc_census* c, char** out);
/* Early-exit test: every coloring synchronizing. */
SC_API sc_status sc_digraph_totally_synchronizing(const sc_digraph* g, uint64_t budget_automata, int* out);
/* Closed-form ratio "num/den" of a family member. */
SC_API sc_status sc_family_expected_ratio(const char* family, int n, int k, int d, char** out);

/* ---- automata (n <= 255 states, k <= 16 letters) ---- */

/* table: n*k 0-indexed successors, table[q*k + a] = q.a */
SC_API sc_status sc_automaton_create(int n, int k, const int* table, sc_automaton** out);
SC_API void sc_automaton_free(sc_automaton* a);
SC_API sc_status sc_automaton_is_synchronizing(const sc_automaton* a, int* out);
/* Shortest reset word by subset search (n <= 20). *synchronizing is 0 when
   none exists. *len receives the word length; the word is written when it
   fits in cap letters, otherwise SC_ERR_INVALID_ARGUMENT is returned. */
SC_API sc_status sc_automaton_shortest_reset_word(const sc_automaton* a, int* word, size_t cap, size_t* len,
                                                  int* synchronizing);

/* ---- batch runs ---- */

typedef enum sc_enumeration_mode { SC_ENUM_SEEDED = 0, SC_ENUM_DIRECT = 1 } sc_enumeration_mode;
typedef enum sc_sample_filter { SC_FILTER_ALL = 0, SC_FILTER_PRIMITIVE = 1 } sc_sample_filter;
typedef enum sc_report_format { SC_FORMAT_CSV = 0, SC_FORMAT_JSON = 1 } sc_report_format;

typedef struct sc_run_options {
  int n;
  int k;
  int mode;
  int workers;
  uint64_t budget_automata;
  uint64_t max_candidates;
  int with_census;
  /* enumerate: JSONL path; stats/gaps/random: directory. NULL: no files. */
  const char* out;
  int resume;
  uint64_t stop_after_chunks;  /* 0: run to the end */
  double checkpoint_seconds;
  uint64_t samples;
  uint64_t seed;
  int filter;
  uint64_t rejection_cap;
} sc_run_options;

typedef struct sc_run_summary {
  uint64_t chunk_count;
  uint64_t completed_chunks;
  uint64_t records;
  int complete;
} sc_run_summary;

typedef void (*sc_write_fn)(const char* data, size_t len, void* user);

SC_API void sc_run_options_init(sc_run_options* opts);
/* Streams JSONL records to write() when opts->out is NULL. summary may be NULL. */
SC_API sc_status sc_run_enumerate(const sc_run_options* opts, sc_write_fn write, void* user, sc_run_summary* summary);
/* report receives the rendered aggregate (format: sc_report_format); may be NULL. */
SC_API sc_status sc_run_stats(const sc_run_options* opts, int format, char** report, sc_run_summary* summary);
SC_API sc_status sc_run_gaps(const sc_run_options* opts, int format, char** report, sc_run_summary* summary);
SC_API sc_status sc_run_random(const sc_run_options* opts, int format, char** report, sc_run_summary* summary);

#ifdef __cplusplus
}
#endif

#endif
