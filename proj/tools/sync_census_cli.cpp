// sync-census: command-line front end over the sync_census C API.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "sync_census/sync_census.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct Failure {
  sc_status status;
};

int exit_code(sc_status s) {
  switch (s) {
    case SC_OK: return kExitOk;
    case SC_ERR_BUDGET:
    case SC_ERR_SIZE_LIMIT: return kExitBudget;
    case SC_ERR_SELF_CHECK:
    case SC_ERR_INTERNAL: return kExitCheck;
    default: return kExitUsage;
  }
}

void ok(sc_status s) {
  if (s != SC_OK) throw Failure{s};
}

struct StringDeleter {
  void operator()(char* s) const { sc_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct DigraphDeleter {
  void operator()(sc_digraph* g) const { sc_digraph_free(g); }
};
using DigraphPtr = std::unique_ptr<sc_digraph, DigraphDeleter>;

struct CensusDeleter {
  void operator()(sc_census* c) const { sc_census_free(c); }
};
using CensusPtr = std::unique_ptr<sc_census, CensusDeleter>;

DigraphPtr load(const std::string& path) {
  sc_digraph* g = nullptr;
  ok(sc_digraph_load(path.c_str(), &g));
  return DigraphPtr(g);
}

std::string take(char* s) { return CString(s).get(); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) {
    std::cerr << "error: cannot write " << path << "\n";
    throw Failure{SC_ERR_IO};
  }
}

int default_workers() {
  if (const char* env = std::getenv("SYNC_CENSUS_WORKERS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 1024) throw CLI::ValidationError("SYNC_CENSUS_WORKERS", "must be an integer in [1, 1024]");
    return static_cast<int>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

const char* yes_no(int v) { return v != 0 ? "true" : "false"; }

struct Globals {
  int workers = 1;
  std::uint64_t budget_automata = 0;
  std::string format;
  std::uint64_t seed = 0;
  std::string out;
};

void report_progress(const char* what, const sc_run_summary& s) {
  if (!s.complete) {
    std::cerr << what << ": stopped after " << s.completed_chunks << " of " << s.chunk_count
              << " chunks; rerun with --resume to continue\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counts synchronizing colorings of k-out-regular digraphs and enumerates them up to isomorphism.",
               "sync-census"};
  app.set_version_flag("--version", std::string("sync-census ") + sc_version());
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  sc_run_options defaults;
  sc_run_options_init(&defaults);
  g.budget_automata = defaults.budget_automata;
  try {
    g.workers = default_workers();
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  app.add_option("--workers", g.workers, "Worker threads (default: $SYNC_CENSUS_WORKERS or all cores)")
      ->check(CLI::Range(1, 1024));
  app.add_option("--budget-automata", g.budget_automata, "Cap on automata checked per digraph census");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json", "jsonl"}));
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--out", g.out, "Output file or directory");

  // check
  std::string check_file;
  auto* check = app.add_subcommand("check", "Validate a digraph file and report its structure");
  check->add_option("file", check_file, "Digraph file (text or JSON)")->required();

  // ratio
  std::string ratio_file, ratio_mode = "reduced";
  auto* ratio = app.add_subcommand("ratio", "Print the synchronizing-coloring census of a digraph as JSON");
  ratio->add_option("file", ratio_file, "Digraph file (text or JSON)")->required();
  ratio->add_option("--mode", ratio_mode, "Census strategy")->check(CLI::IsMember({"full", "reduced", "sink"}));

  // construct
  std::string family;
  int c_n = 0, c_k = 2, c_d = 1;
  bool self_check = false;
  auto* cons = app.add_subcommand("construct", "Write a member of a parametric family");
  cons->add_option("family", family, "cerny, g30, gnk or hdnk")->required()->check(CLI::IsMember({"cerny", "g30", "gnk", "hdnk"}));
  cons->add_option("--n", c_n, "Vertices");
  cons->add_option("--k", c_k, "Out-degree");
  cons->add_option("--d", c_d, "Depth (hdnk)");
  cons->add_flag("--self-check", self_check, "Run the census and compare with the closed-form ratio");

  // batch commands share n, k, mode, resume
  int n = 0, k = 0;
  std::string mode = "seeded";
  bool no_census = false, resume = false;
  std::uint64_t max_candidates = defaults.max_candidates, stop_after = 0;
  auto batch_options = [&](CLI::App* sub) {
    sub->add_option("--n", n, "Vertices")->required();
    sub->add_option("--k", k, "Out-degree")->required();
    sub->add_flag("--resume", resume, "Continue from the manifest of an interrupted run");
    sub->add_option("--stop-after-chunks", stop_after, "Checkpoint and stop after this many chunks");
  };
  auto class_options = [&](CLI::App* sub) {
    batch_options(sub);
    sub->add_option("--mode", mode, "Enumeration strategy")->check(CLI::IsMember({"seeded", "direct"}));
    sub->add_option("--max-candidates", max_candidates, "Cap on candidates generated in direct mode");
  };
  auto* enumerate = app.add_subcommand("enumerate", "Stream nonisomorphic primitive digraphs as JSONL");
  class_options(enumerate);
  enumerate->add_flag("--no-census", no_census, "Omit the per-digraph census");
  auto* stats = app.add_subcommand("stats", "Class statistics: table1.csv and table2.csv");
  class_options(stats);
  auto* gaps = app.add_subcommand("gaps", "Distribution of synchronizing-coloring counts: gaps.csv");
  class_options(gaps);

  std::uint64_t samples = 0, rejection_cap = defaults.rejection_cap;
  std::string filter = "all";
  auto* random = app.add_subcommand("random", "Sample uniformly random digraphs: random.csv");
  batch_options(random);
  random->add_option("--samples", samples, "Number of accepted samples")->required();
  random->add_option("--filter", filter, "Sample acceptance filter")->check(CLI::IsMember({"all", "sc-aperiodic"}));
  random->add_option("--rejection-cap", rejection_cap, "Attempts allowed per accepted sample");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  auto run_options = [&] {
    sc_run_options o = defaults;
    o.n = n;
    o.k = k;
    o.mode = mode == "direct" ? SC_ENUM_DIRECT : SC_ENUM_SEEDED;
    o.workers = g.workers;
    o.budget_automata = g.budget_automata;
    o.max_candidates = max_candidates;
    o.with_census = no_census ? 0 : 1;
    o.out = g.out.empty() ? nullptr : g.out.c_str();
    o.resume = resume ? 1 : 0;
    o.stop_after_chunks = stop_after;
    o.samples = samples;
    o.seed = g.seed;
    o.filter = filter == "sc-aperiodic" ? SC_FILTER_PRIMITIVE : SC_FILTER_ALL;
    o.rejection_cap = rejection_cap;
    return o;
  };
  const int report_format = g.format == "json" ? SC_FORMAT_JSON : SC_FORMAT_CSV;

  try {
    if (check->parsed()) {
      DigraphPtr d = load(check_file);
      sc_analysis a;
      ok(sc_digraph_analyze(d.get(), &a));
      if (g.format == "json") {
        std::cout << "{\"vertices\":" << sc_digraph_vertices(d.get()) << ",\"degree\":" << sc_digraph_degree(d.get())
                  << ",\"valid\":true,\"strongly_connected\":" << yes_no(a.strongly_connected) << ",\"aperiodic\":"
                  << (a.aperiodic < 0 ? "null" : yes_no(a.aperiodic)) << ",\"primitive\":" << yes_no(a.primitive)
                  << ",\"components\":" << a.scc_count << ",\"sink_components\":" << a.sink_count
                  << ",\"sink_size\":" << a.sink_size << "}\n";
      } else {
        std::cout << "vertices: " << sc_digraph_vertices(d.get()) << "\n"
                  << "degree: " << sc_digraph_degree(d.get()) << "\n"
                  << "valid: true\n"
                  << "strongly connected: " << yes_no(a.strongly_connected) << "\n"
                  << "aperiodic: " << (a.aperiodic < 0 ? "undefined" : yes_no(a.aperiodic)) << "\n";
        if (a.strongly_connected) std::cout << "period: " << a.cycle_gcd << "\n";
        std::cout << "primitive: " << yes_no(a.primitive) << "\n"
                  << "components: " << a.scc_count << "\n"
                  << "sink components: " << a.sink_count << "\n";
        if (a.sink_count == 1) std::cout << "sink size: " << a.sink_size << "\n";
      }
    } else if (ratio->parsed()) {
      DigraphPtr d = load(ratio_file);
      sc_census_options o;
      sc_census_options_init(&o);
      o.mode = ratio_mode == "full" ? SC_CENSUS_FULL : ratio_mode == "sink" ? SC_CENSUS_VIA_SINK : SC_CENSUS_REDUCED;
      o.budget_automata = g.budget_automata;
      o.workers = g.workers;
      sc_census* c = nullptr;
      ok(sc_census_run(d.get(), &o, &c));
      CensusPtr census(c);
      char* json = nullptr;
      ok(sc_census_to_json(census.get(), &json));
      std::cout << take(json) << "\n";
    } else if (cons->parsed()) {
      sc_digraph* raw = nullptr;
      ok(sc_digraph_construct(family.c_str(), c_n, c_k, c_d, &raw));
      DigraphPtr d(raw);
      char* text = nullptr;
      ok(sc_digraph_format(d.get(), g.format == "json" ? 1 : 0, &text));
      std::string body = take(text);
      if (g.out.empty()) {
        std::cout << body;
      } else {
        write_text(g.out, body);
      }
      if (self_check) {
        sc_census_options o;
        sc_census_options_init(&o);
        o.budget_automata = g.budget_automata;
        o.workers = g.workers;
        sc_census* c = nullptr;
        ok(sc_census_run(d.get(), &o, &c));
        CensusPtr census(c);
        char* got = nullptr;
        char* want = nullptr;
        ok(sc_census_get(census.get(), SC_FIELD_RATIO, &got));
        ok(sc_family_expected_ratio(family.c_str(), c_n, c_k, c_d, &want));
        std::string got_s = take(got), want_s = take(want);
        if (got_s != want_s) {
          std::cerr << "self-check failed: ratio " << got_s << ", expected " << want_s << "\n";
          return kExitCheck;
        }
        std::cerr << "self-check passed: ratio " << got_s << "\n";
      }
    } else if (enumerate->parsed()) {
      sc_run_options o = run_options();
      sc_run_summary s;
      auto write = [](const char* data, size_t len, void*) { std::fwrite(data, 1, len, stdout); };
      ok(sc_run_enumerate(&o, write, nullptr, &s));
      std::fflush(stdout);
      report_progress("enumerate", s);
    } else if (stats->parsed() || gaps->parsed() || random->parsed()) {
      sc_run_options o = run_options();
      sc_run_summary s;
      char* report = nullptr;
      const char* what = stats->parsed() ? "stats" : gaps->parsed() ? "gaps" : "random";
      if (stats->parsed()) {
        ok(sc_run_stats(&o, report_format, &report, &s));
      } else if (gaps->parsed()) {
        ok(sc_run_gaps(&o, report_format, &report, &s));
      } else {
        ok(sc_run_random(&o, report_format, &report, &s));
      }
      std::string text = take(report);
      if (s.complete) {
        std::cout << text;
      } else {
        report_progress(what, s);
      }
    }
  } catch (const Failure& f) {
    const char* msg = sc_last_error();
    if (msg != nullptr && *msg != '\0') std::cerr << "error: " << msg << "\n";
    return exit_code(f.status);
  }
  return kExitOk;
}
