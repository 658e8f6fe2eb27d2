#include "core/batch.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "core/canonical.hpp"
#include "core/error.hpp"
#include "core/ordered_pool.hpp"

namespace synccensus {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kManifestFormat = "sync-census-manifest/1";

std::string mode_name(EnumerationMode m) { return m == EnumerationMode::kSeeded ? "seeded" : "direct"; }

void write_atomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw Error(ErrorCode::kIo, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot rename " + tmp.string() + ": " + ec.message());
}

json load_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read manifest " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    json m = json::parse(buf.str());
    if (m.value("format", "") != kManifestFormat) throw Error(ErrorCode::kParse, "unrecognized manifest format in " + path.string());
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, "malformed manifest " + path.string() + ": " + e.what());
  }
}

void check_params(const json& manifest, const json& params) {
  const json& stored = manifest.at("params");
  for (auto it = params.begin(); it != params.end(); ++it) {
    if (!stored.contains(it.key()) || stored.at(it.key()) != it.value()) {
      throw Error(ErrorCode::kInvalidArgument, "cannot resume: manifest parameter '" + it.key() + "' differs from this run");
    }
  }
}

class Stopwatch {
 public:
  explicit Stopwatch(double prior_seconds, double interval)
      : prior_(prior_seconds), interval_(interval), start_(Clock::now()), last_(start_) {}

  double total() const { return prior_ + std::chrono::duration<double>(Clock::now() - start_).count(); }
  bool due() {
    auto now = Clock::now();
    if (std::chrono::duration<double>(now - last_).count() < interval_) return false;
    last_ = now;
    return true;
  }

 private:
  using Clock = std::chrono::steady_clock;
  double prior_;
  double interval_;
  Clock::time_point start_;
  Clock::time_point last_;
};

json base_manifest(const json& params, const RunOptions& opts, const std::string& unit, std::size_t unit_size,
                   std::size_t chunk_count, std::size_t completed, double seconds) {
  json m;
  m["format"] = kManifestFormat;
  m["params"] = params;
  m["budgets"] = {{"automata", std::to_string(opts.budget_automata)}, {"candidates", std::to_string(opts.max_candidates)}};
  m["workers"] = opts.workers;
  m["chunks"] = {{"unit", unit}, {"size", unit_size}, {"count", chunk_count}, {"completed", {0, completed}}};
  m["status"] = completed == chunk_count ? "complete" : "partial";
  m["wall_time_seconds"] = seconds;
  return m;
}

json stats_to_partial(const StatsRecord& s) {
  return {{"class_size", s.class_size},
          {"min", to_decimal(s.min_sync)},
          {"sum", to_decimal(s.sum)},
          {"sum_sq", to_decimal(s.sum_sq)},
          {"totally_sync", s.totally_sync}};
}

u128 decimal_field(const json& j, const char* name) {
  auto v = parse_decimal(j.at(name).get<std::string>());
  if (!v) throw Error(ErrorCode::kParse, std::string("manifest field '") + name + "' is not a decimal integer");
  return *v;
}

void stats_from_partial(const json& j, StatsRecord& s) {
  s.class_size = j.at("class_size").get<std::uint64_t>();
  s.min_sync = decimal_field(j, "min");
  s.sum = decimal_field(j, "sum");
  s.sum_sq = decimal_field(j, "sum_sq");
  s.totally_sync = j.at("totally_sync").get<std::uint64_t>();
}

json histogram_to_json(const GapTable& g) {
  json h = json::array();
  for (const auto& [value, count] : g.histogram) h.push_back({to_decimal(value), count});
  return h;
}

void histogram_from_json(const json& h, GapTable& g) {
  for (const auto& entry : h) {
    auto value = parse_decimal(entry.at(0).get<std::string>());
    if (!value) throw Error(ErrorCode::kParse, "manifest histogram key is not a decimal integer");
    g.add(*value, entry.at(1).get<std::uint64_t>());
  }
}

std::string rational_field(const Rational& r) { return r.str(); }

json stats_object(const StatsRecord& s) {
  json j;
  j["k"] = s.k;
  j["n"] = s.n;
  j["class_size"] = s.class_size;
  j["total_colorings"] = to_decimal(s.total_colorings);
  if (s.class_size != 0) {
    j["min"] = to_decimal(s.min_sync);
    j["min_ratio"] = rational_field(s.min_ratio());
    j["avg"] = rational_field(s.avg());
    j["avg_ratio"] = rational_field(s.avg_ratio());
    j["sum"] = to_decimal(s.sum);
    j["sum_sq"] = to_decimal(s.sum_sq);
    j["std_dev"] = s.std_dev_text(3);
    j["totally_sync"] = s.totally_sync;
    j["fraction"] = rational_field(s.totally_sync_fraction());
    j["rounded"] = {{"min_ratio", round_half_up(s.min_sync, s.total_colorings, 3)},
                    {"avg", round_half_up(s.sum, s.class_size, 3)},
                    {"avg_ratio", round_half_up(s.sum, checked_mul(s.class_size, s.total_colorings), 3)},
                    {"std_dev", s.std_dev_text(3)},
                    {"fraction", round_half_up(s.totally_sync, s.class_size, 3)}};
  }
  return j;
}

fs::path prepare_dir(const std::string& out) {
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create output directory " + out + ": " + ec.message());
  return dir;
}

struct ChunkCensus {
  std::vector<std::pair<CanonicalKey, u128>> counts;
};

ClassOutcome run_class(const RunOptions& opts, const std::string& command) {
  PrimitiveEnumerator e(opts.n, opts.k, opts.mode, opts.max_candidates);
  ClassOutcome outcome{{}, {StatsRecord::empty(opts.n, opts.k), GapTable{opts.n, opts.k, {}}}};
  RunSummary& summary = outcome.summary;
  summary.chunk_count = e.chunk_count();

  json params = {{"command", command}, {"n", opts.n}, {"k", opts.k}, {"mode", mode_name(opts.mode)}};
  const bool to_files = !opts.out.empty();
  fs::path dir, manifest;
  std::size_t start = 0;
  double prior = 0.0;
  if (to_files) {
    dir = prepare_dir(opts.out);
    manifest = dir / (command + ".manifest.json");
    summary.manifest_path = manifest.string();
    if (opts.resume && fs::exists(manifest)) {
      if (opts.mode == EnumerationMode::kDirect) {
        throw Error(ErrorCode::kInvalidArgument, "resume is supported for seeded class runs only");
      }
      json m = load_manifest(manifest);
      check_params(m, params);
      start = m.at("chunks").at("completed").at(1).get<std::size_t>();
      prior = m.value("wall_time_seconds", 0.0);
      stats_from_partial(m.at("partial"), outcome.result.stats);
      histogram_from_json(m.at("partial").at("histogram"), outcome.result.gaps);
    }
  } else if (opts.resume) {
    throw Error(ErrorCode::kInvalidArgument, "resume requires an output directory");
  }
  summary.completed_chunks = start;
  summary.records = outcome.result.stats.class_size;

  Stopwatch clock(prior, opts.checkpoint_seconds);
  auto checkpoint = [&] {
    json m = base_manifest(params, opts, opts.mode == EnumerationMode::kSeeded ? "seed" : "vertex0-row", 1,
                           summary.chunk_count, summary.completed_chunks, clock.total());
    json partial = stats_to_partial(outcome.result.stats);
    partial["histogram"] = histogram_to_json(outcome.result.gaps);
    m["partial"] = partial;
    if (summary.completed_chunks == summary.chunk_count) {
      m["outputs"] = command == "stats" ? json{"table1.csv", "table2.csv"} : json{"gaps.csv"};
    }
    write_atomic(manifest, m.dump(2) + "\n");
  };

  std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
  CensusOptions census_opts;
  census_opts.budget = opts.budget_automata;
  std::uint64_t done_here = 0;

  std::function<ChunkCensus(std::size_t)> work = [&](std::size_t c) {
    ChunkCensus r;
    for (const Digraph& d : e.run_chunk(c)) r.counts.emplace_back(raw_key(d), census(d, census_opts).sync_colorings);
    return r;
  };
  std::function<bool(std::size_t, ChunkCensus&&)> consume = [&](std::size_t c, ChunkCensus&& r) {
    for (auto& [key, sync] : r.counts) {
      if (!seen.insert(key).second) {
        if (opts.mode == EnumerationMode::kSeeded) {
          throw Error(ErrorCode::kInternal, "isomorphic digraphs produced from two different seeds");
        }
        continue;
      }
      outcome.result.stats.add(sync);
      outcome.result.gaps.add(sync);
    }
    summary.completed_chunks = c + 1;
    summary.records = outcome.result.stats.class_size;
    bool stop = opts.stop_after_chunks != 0 && ++done_here >= opts.stop_after_chunks;
    if (to_files && (stop || clock.due())) checkpoint();
    return !stop;
  };
  run_ordered<ChunkCensus>(start, summary.chunk_count, opts.workers, work, consume);

  summary.complete = summary.completed_chunks == summary.chunk_count;
  if (to_files) {
    if (summary.complete) {
      if (command == "stats") {
        write_atomic(dir / "table1.csv", table1_csv(outcome.result.stats));
        write_atomic(dir / "table2.csv", table2_csv(outcome.result.stats));
      } else {
        write_atomic(dir / "gaps.csv", gaps_csv(outcome.result.gaps));
      }
    }
    checkpoint();
  }
  return outcome;
}

}  // namespace

RunSummary run_enumerate(const RunOptions& opts, const TextSink& sink) {
  PrimitiveEnumerator e(opts.n, opts.k, opts.mode, opts.max_candidates);
  RunSummary summary;
  summary.chunk_count = e.chunk_count();

  json params = {{"command", "enumerate"}, {"n", opts.n}, {"k", opts.k}, {"mode", mode_name(opts.mode)},
                 {"census", opts.with_census}};
  std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
  const bool to_file = !opts.out.empty();
  fs::path out, manifest;
  std::ofstream file;
  std::uint64_t bytes = 0;
  std::size_t start = 0;
  double prior = 0.0;

  if (to_file) {
    out = opts.out;
    manifest = out;
    manifest += ".manifest.json";
    summary.manifest_path = manifest.string();
    if (opts.resume && fs::exists(manifest)) {
      json m = load_manifest(manifest);
      check_params(m, params);
      start = m.at("chunks").at("completed").at(1).get<std::size_t>();
      bytes = m.at("output_bytes").get<std::uint64_t>();
      summary.records = m.at("records").get<std::uint64_t>();
      prior = m.value("wall_time_seconds", 0.0);
      if (!fs::exists(out) || fs::file_size(out) < bytes) {
        throw Error(ErrorCode::kIo, "cannot resume: " + out.string() + " is shorter than its manifest records");
      }
      fs::resize_file(out, bytes);
      std::ifstream in(out, std::ios::binary);
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
          seen.insert(CanonicalKey::from_hex(json::parse(line).at("key").get<std::string>()));
        } catch (const json::exception& ex) {
          throw Error(ErrorCode::kParse, "cannot resume: malformed record in " + out.string() + ": " + ex.what());
        }
      }
    } else {
      std::ofstream truncate(out, std::ios::binary | std::ios::trunc);
      if (!truncate) throw Error(ErrorCode::kIo, "cannot write " + out.string());
    }
    file.open(out, std::ios::binary | std::ios::app);
    if (!file) throw Error(ErrorCode::kIo, "cannot append to " + out.string());
  } else if (opts.resume) {
    throw Error(ErrorCode::kInvalidArgument, "resume requires an output file");
  }
  summary.completed_chunks = start;

  Stopwatch clock(prior, opts.checkpoint_seconds);
  auto checkpoint = [&] {
    file.flush();
    if (!file) throw Error(ErrorCode::kIo, "write failed for " + out.string());
    json m = base_manifest(params, opts, opts.mode == EnumerationMode::kSeeded ? "seed" : "vertex0-row", 1,
                           summary.chunk_count, summary.completed_chunks, clock.total());
    m["records"] = summary.records;
    m["output_bytes"] = bytes;
    write_atomic(manifest, m.dump(2) + "\n");
  };

  CensusOptions census_opts;
  census_opts.budget = opts.budget_automata;
  using Lines = std::vector<std::pair<CanonicalKey, std::string>>;
  std::function<Lines(std::size_t)> work = [&](std::size_t c) {
    Lines lines;
    for (const Digraph& d : e.run_chunk(c)) {
      CanonicalKey key = raw_key(d);
      json j;
      j["n"] = d.n();
      j["k"] = d.k();
      j["dests"] = d.rows();
      j["key"] = key.hex();
      std::string line = j.dump();
      if (opts.with_census) {
        line.pop_back();
        line += ",\"census\":" + census_to_json(census(d, census_opts)) + "}";
      }
      line += '\n';
      lines.emplace_back(key, std::move(line));
    }
    return lines;
  };
  std::uint64_t done_here = 0;
  std::function<bool(std::size_t, Lines&&)> consume = [&](std::size_t c, Lines&& lines) {
    for (auto& [key, line] : lines) {
      if (!seen.insert(key).second) {
        if (opts.mode == EnumerationMode::kSeeded) {
          throw Error(ErrorCode::kInternal, "isomorphic digraphs produced from two different seeds");
        }
        continue;
      }
      if (to_file) {
        file << line;
      } else {
        sink(line);
      }
      bytes += line.size();
      ++summary.records;
    }
    summary.completed_chunks = c + 1;
    bool stop = opts.stop_after_chunks != 0 && ++done_here >= opts.stop_after_chunks;
    if (to_file && (stop || clock.due())) checkpoint();
    return !stop;
  };
  run_ordered<Lines>(start, summary.chunk_count, opts.workers, work, consume);

  summary.complete = summary.completed_chunks == summary.chunk_count;
  if (to_file) checkpoint();
  return summary;
}

ClassOutcome run_stats(const RunOptions& opts) { return run_class(opts, "stats"); }

ClassOutcome run_gaps(const RunOptions& opts) { return run_class(opts, "gaps"); }

RandomOutcome run_random(const RunOptions& opts) {
  const RandomModelConfig& cfg = opts.random;
  validate_config(cfg);
  RandomOutcome outcome{{}, {cfg, StatsRecord::empty(cfg.n, cfg.k), 0}};
  outcome.report.class_weighted = cfg.n <= kMaxCanonicalVertices;
  RunSummary& summary = outcome.summary;
  summary.chunk_count = static_cast<std::size_t>((cfg.samples + kRandomChunkSamples - 1) / kRandomChunkSamples);

  json params = {{"command", "random"},       {"n", cfg.n},
                 {"k", cfg.k},                {"samples", cfg.samples},
                 {"seed", cfg.seed},          {"filter", filter_name(cfg.filter)},
                 {"rejection_cap", cfg.rejection_cap}};
  const bool to_files = !opts.out.empty();
  fs::path dir, manifest;
  std::size_t start = 0;
  double prior = 0.0;
  if (to_files) {
    dir = prepare_dir(opts.out);
    manifest = dir / "random.manifest.json";
    summary.manifest_path = manifest.string();
    if (opts.resume && fs::exists(manifest)) {
      json m = load_manifest(manifest);
      check_params(m, params);
      start = m.at("chunks").at("completed").at(1).get<std::size_t>();
      prior = m.value("wall_time_seconds", 0.0);
      const json& partial = m.at("partial");
      stats_from_partial(partial, outcome.report.stats);
      outcome.report.attempts = partial.at("attempts").get<std::uint64_t>();
      if (outcome.report.class_weighted) {
        outcome.report.weight_sum = partial.at("weight_sum").get<double>();
        outcome.report.weight_sq_sum = partial.at("weight_sq_sum").get<double>();
        outcome.report.weight_totally_sync = partial.at("weight_totally_sync").get<double>();
      }
    }
  } else if (opts.resume) {
    throw Error(ErrorCode::kInvalidArgument, "resume requires an output directory");
  }
  summary.completed_chunks = start;
  summary.records = outcome.report.stats.class_size;

  Stopwatch clock(prior, opts.checkpoint_seconds);
  auto checkpoint = [&] {
    json m = base_manifest(params, opts, "samples", kRandomChunkSamples, summary.chunk_count, summary.completed_chunks,
                           clock.total());
    json partial = stats_to_partial(outcome.report.stats);
    partial["attempts"] = outcome.report.attempts;
    if (outcome.report.class_weighted) {
      partial["weight_sum"] = outcome.report.weight_sum;
      partial["weight_sq_sum"] = outcome.report.weight_sq_sum;
      partial["weight_totally_sync"] = outcome.report.weight_totally_sync;
    }
    m["partial"] = partial;
    if (summary.completed_chunks == summary.chunk_count) m["outputs"] = json{"random.csv"};
    write_atomic(manifest, m.dump(2) + "\n");
  };

  std::uint64_t done_here = 0;
  std::function<RandomReport(std::size_t)> work = [&](std::size_t c) {
    std::uint64_t first = c * kRandomChunkSamples;
    return random_chunk(cfg, first, std::min(cfg.samples, first + kRandomChunkSamples), opts.budget_automata);
  };
  std::function<bool(std::size_t, RandomReport&&)> consume = [&](std::size_t c, RandomReport&& part) {
    outcome.report.merge(part);
    summary.completed_chunks = c + 1;
    summary.records = outcome.report.stats.class_size;
    bool stop = opts.stop_after_chunks != 0 && ++done_here >= opts.stop_after_chunks;
    if (to_files && (stop || clock.due())) checkpoint();
    return !stop;
  };
  run_ordered<RandomReport>(start, summary.chunk_count, opts.workers, work, consume);

  summary.complete = summary.completed_chunks == summary.chunk_count;
  if (to_files) {
    if (summary.complete) write_atomic(dir / "random.csv", random_csv(outcome.report));
    checkpoint();
  }
  return outcome;
}

std::string table1_csv(const StatsRecord& s) { return std::string(kTable1Header) + "\n" + table1_csv_row(s) + "\n"; }

std::string table2_csv(const StatsRecord& s) { return std::string(kTable2Header) + "\n" + table2_csv_row(s) + "\n"; }

std::string stats_csv(const StatsRecord& s) { return table1_csv(s) + table2_csv(s); }

std::string stats_json(const StatsRecord& s) { return stats_object(s).dump(2) + "\n"; }

std::string gaps_csv(const GapTable& g) {
  std::string out = std::string(kGapsHeader) + "\n";
  for (const auto& [value, count] : g.histogram) {
    out += std::to_string(g.k) + "," + std::to_string(g.n) + "," + to_decimal(value) + "," + std::to_string(count) + "\n";
  }
  return out;
}

std::string gaps_json(const GapTable& g) {
  json j;
  j["k"] = g.k;
  j["n"] = g.n;
  j["total"] = g.total();
  json h = json::array();
  for (const auto& [value, count] : g.histogram) h.push_back({{"sync_colorings", to_decimal(value)}, {"count", count}});
  j["histogram"] = h;
  json gaps = json::array();
  for (const auto& [lo, hi] : g.gaps()) gaps.push_back({to_decimal(lo), to_decimal(hi)});
  j["gaps"] = gaps;
  return j.dump(2) + "\n";
}

std::string random_csv(const RandomReport& r) { return std::string(kRandomHeader) + "\n" + random_csv_row(r) + "\n"; }

std::string random_json(const RandomReport& r) {
  json j;
  j["k"] = r.config.k;
  j["n"] = r.config.n;
  j["filter"] = filter_name(r.config.filter);
  j["samples"] = r.config.samples;
  j["seed"] = r.config.seed;
  j["attempts"] = r.attempts;
  j["stats"] = stats_object(r.stats);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", r.fraction());
  j["fraction"] = buf;
  std::snprintf(buf, sizeof buf, "%.6f", r.radius_3sigma());
  j["radius_3sigma"] = buf;
  if (r.class_weighted) {
    std::snprintf(buf, sizeof buf, "%.6f", r.class_fraction());
    j["class_fraction"] = buf;
    std::snprintf(buf, sizeof buf, "%.1f", r.effective_samples());
    j["effective_samples"] = buf;
    std::snprintf(buf, sizeof buf, "%.6f", r.class_radius_3sigma());
    j["class_radius_3sigma"] = buf;
  }
  return j.dump(2) + "\n";
}

}  // namespace synccensus
