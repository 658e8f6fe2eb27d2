#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "core/census.hpp"
#include "core/enumerate.hpp"
#include "core/experiments.hpp"

namespace synccensus {

/// Parameters shared by the long-running batch commands.
struct RunOptions {
  int n = 0;
  int k = 0;
  EnumerationMode mode = EnumerationMode::kSeeded;
  int workers = 1;
  std::uint64_t budget_automata = kDefaultAutomatonBudget;
  std::uint64_t max_candidates = kDefaultCandidateBudget;
  bool with_census = true;
  // enumerate: JSONL file (manifest beside it as <out>.manifest.json).
  // stats/gaps/random: output directory. Empty: no files, no manifest.
  std::string out;
  bool resume = false;
  // Stop after this many chunks in this invocation (0: run to the end). The
  // manifest is checkpointed before returning, as after an interruption.
  std::uint64_t stop_after_chunks = 0;
  double checkpoint_seconds = 5.0;
  RandomModelConfig random;
};

using TextSink = std::function<void(std::string_view)>;

struct RunSummary {
  std::size_t chunk_count = 0;
  std::size_t completed_chunks = 0;
  std::uint64_t records = 0;
  bool complete = false;
  std::string manifest_path;
};

/// Streams one JSONL record per nonisomorphic primitive digraph: n, k, dests
/// (0-indexed), canonical key in hex and, unless disabled, the census. Writes
/// to opts.out when set, otherwise to `sink`.
RunSummary run_enumerate(const RunOptions& opts, const TextSink& sink);

struct ClassOutcome {
  RunSummary summary;
  ClassCensus result;
};

/// table1.csv, table2.csv and stats.manifest.json.
ClassOutcome run_stats(const RunOptions& opts);
/// gaps.csv and gaps.manifest.json.
ClassOutcome run_gaps(const RunOptions& opts);

struct RandomOutcome {
  RunSummary summary;
  RandomReport report;
};

/// random.csv and random.manifest.json.
RandomOutcome run_random(const RunOptions& opts);

// Report renderings (also the file contents).
std::string stats_csv(const StatsRecord& s);    // both tables, each with its header
std::string stats_json(const StatsRecord& s);
std::string table1_csv(const StatsRecord& s);
std::string table2_csv(const StatsRecord& s);
std::string gaps_csv(const GapTable& g);
std::string gaps_json(const GapTable& g);
std::string random_csv(const RandomReport& r);
std::string random_json(const RandomReport& r);

}  // namespace synccensus
