#include "core/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "core/analysis.hpp"
#include "core/canonical.hpp"
#include "core/error.hpp"
#include "core/ordered_pool.hpp"

namespace synccensus {

StatsRecord StatsRecord::empty(int n, int k) {
  StatsRecord s;
  s.n = n;
  s.k = k;
  const u128 kfact = factorial(k);
  s.total_colorings = 1;
  for (int i = 0; i < n; ++i) s.total_colorings = checked_mul(s.total_colorings, kfact);
  return s;
}

void StatsRecord::add(u128 sync_colorings) {
  if (class_size == 0 || sync_colorings < min_sync) min_sync = sync_colorings;
  ++class_size;
  sum = checked_add(sum, sync_colorings);
  sum_sq = checked_add(sum_sq, checked_mul(sync_colorings, sync_colorings));
  if (sync_colorings == total_colorings) ++totally_sync;
}

void StatsRecord::merge(const StatsRecord& other) {
  if (other.class_size == 0) return;
  if (class_size == 0 || other.min_sync < min_sync) min_sync = other.min_sync;
  class_size += other.class_size;
  sum = checked_add(sum, other.sum);
  sum_sq = checked_add(sum_sq, other.sum_sq);
  totally_sync += other.totally_sync;
}

Rational StatsRecord::min_ratio() const { return Rational(min_sync, total_colorings); }

Rational StatsRecord::avg() const {
  if (class_size == 0) return Rational();
  return Rational(sum, class_size);
}

Rational StatsRecord::avg_ratio() const {
  if (class_size == 0) return Rational();
  return Rational(sum, checked_mul(class_size, total_colorings));
}

Rational StatsRecord::totally_sync_fraction() const {
  if (class_size == 0) return Rational();
  return Rational(totally_sync, class_size);
}

double StatsRecord::std_dev() const { return population_std_dev_value(class_size, sum, sum_sq); }

std::string StatsRecord::std_dev_text(int decimals) const {
  if (class_size == 0) return "";
  return population_std_dev(class_size, sum, sum_sq, decimals);
}

void GapTable::add(u128 sync_colorings, std::uint64_t count) { histogram[sync_colorings] += count; }

void GapTable::merge(const GapTable& other) {
  for (const auto& [value, count] : other.histogram) histogram[value] += count;
}

std::uint64_t GapTable::total() const {
  std::uint64_t out = 0;
  for (const auto& [value, count] : histogram) out += count;
  return out;
}

std::vector<std::pair<u128, u128>> GapTable::gaps() const {
  std::vector<std::pair<u128, u128>> out;
  const u128 step = factorial(k);
  const u128* prev = nullptr;
  for (const auto& [value, count] : histogram) {
    if (count == 0) continue;
    if (prev != nullptr) {
      // Multiples of k! strictly inside (prev, value).
      u128 lo = (*prev / step + 1) * step;
      u128 hi = value % step == 0 ? value - step : value / step * step;
      if (lo <= hi) out.emplace_back(lo, hi);
    }
    prev = &value;
  }
  return out;
}

namespace {

struct ChunkCensus {
  std::vector<std::pair<CanonicalKey, u128>> counts;
};

}  // namespace

ClassCensus census_class(int n, int k, int workers, EnumerationMode mode, std::uint64_t budget) {
  PrimitiveEnumerator e(n, k, mode);
  ClassCensus out{StatsRecord::empty(n, k), GapTable{n, k, {}}};
  std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
  CensusOptions opts;
  opts.budget = budget;

  std::function<ChunkCensus(std::size_t)> work = [&](std::size_t c) {
    ChunkCensus r;
    for (const Digraph& d : e.run_chunk(c)) r.counts.emplace_back(raw_key(d), census(d, opts).sync_colorings);
    return r;
  };
  std::function<bool(std::size_t, ChunkCensus&&)> consume = [&](std::size_t, ChunkCensus&& r) {
    for (auto& [key, sync] : r.counts) {
      if (!seen.insert(key).second) {
        if (mode == EnumerationMode::kSeeded) {
          throw Error(ErrorCode::kInternal, "isomorphic digraphs produced from two different seeds");
        }
        continue;
      }
      out.stats.add(sync);
      out.gaps.add(sync);
    }
    return true;
  };
  run_ordered<ChunkCensus>(0, e.chunk_count(), workers, work, consume);
  return out;
}

StatsRecord table1_stats(int n, int k, int workers) { return census_class(n, k, workers).stats; }

Table2Counts table2_counts(int n, int k, int workers) {
  StatsRecord s = census_class(n, k, workers).stats;
  return {s.class_size, s.totally_sync};
}

GapTable gap_distribution(int n, int k, int workers) { return census_class(n, k, workers).gaps; }

std::string table1_csv_row(const StatsRecord& s) {
  std::string row = std::to_string(s.k) + "," + std::to_string(s.n) + "," + std::to_string(s.class_size);
  if (s.class_size == 0) return row + ",,,,,";
  row += "," + to_decimal(s.min_sync);
  row += "," + round_half_up(s.min_sync, s.total_colorings, 3);
  row += "," + round_half_up(s.sum, s.class_size, 3);
  row += "," + round_half_up(s.sum, checked_mul(s.class_size, s.total_colorings), 3);
  row += "," + s.std_dev_text(3);
  return row;
}

std::string table2_csv_row(const StatsRecord& s) {
  std::string row = std::to_string(s.k) + "," + std::to_string(s.n) + "," + std::to_string(s.class_size) + "," +
                    std::to_string(s.totally_sync);
  row += ",";
  if (s.class_size != 0) row += round_half_up(s.totally_sync, s.class_size, 3);
  return row;
}

SplitMix64::result_type SplitMix64::operator()() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SplitMix64 SplitMix64::stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 outer(seed);
  std::uint64_t a = outer();
  SplitMix64 inner(a ^ (index * 0xd1b54a32d192ed03ULL));
  return SplitMix64(inner());
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "empty range");
  // Reject the incomplete top block.
  const std::uint64_t limit = max() - max() % bound;
  while (true) {
    std::uint64_t x = (*this)();
    if (x < limit) return x % bound;
  }
}

std::string filter_name(SampleFilter f) { return f == SampleFilter::kAll ? "all" : "sc-aperiodic"; }

void validate_config(const RandomModelConfig& cfg) {
  if (cfg.n < 1 || cfg.n > kMaxVertices) throw Error(ErrorCode::kSizeLimit, "random model: n must be in [1, 15]");
  if (cfg.k < 1 || cfg.k > kMaxDegree) throw Error(ErrorCode::kSizeLimit, "random model: k must be in [1, 6]");
  if (cfg.samples == 0) throw Error(ErrorCode::kInvalidArgument, "random model: sample count must be positive");
  if (cfg.rejection_cap == 0) throw Error(ErrorCode::kInvalidArgument, "random model: rejection cap must be positive");
}

namespace {

Digraph draw(SplitMix64& rng, int n, int k) {
  Digraph d(n, k);
  std::array<Vertex, kMaxDegree> row{};
  for (int v = 0; v < n; ++v) {
    for (int j = 0; j < k; ++j) row[j] = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    d.set_dests(v, std::span<const Vertex>(row.data(), k));
  }
  return d;
}

std::pair<Digraph, std::uint64_t> sample_with_attempts(const RandomModelConfig& cfg, std::uint64_t index) {
  SplitMix64 rng = SplitMix64::stream(cfg.seed, index);
  for (std::uint64_t attempt = 1; attempt <= cfg.rejection_cap; ++attempt) {
    Digraph d = draw(rng, cfg.n, cfg.k);
    if (cfg.filter == SampleFilter::kAll || is_primitive(d)) return {d, attempt};
  }
  throw Error(ErrorCode::kBudget, "random model: rejection cap of " + std::to_string(cfg.rejection_cap) +
                                      " attempts exceeded; the filtered class is too sparse");
}

}  // namespace

Digraph sample_random_digraph(const RandomModelConfig& cfg, std::uint64_t sample_index) {
  validate_config(cfg);
  return sample_with_attempts(cfg, sample_index).first;
}

double RandomReport::fraction() const {
  if (stats.class_size == 0) return 0.0;
  return static_cast<double>(stats.totally_sync) / static_cast<double>(stats.class_size);
}

double RandomReport::radius_3sigma() const {
  if (stats.class_size == 0) return 0.0;
  double p = fraction();
  return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(stats.class_size));
}

double RandomReport::class_fraction() const {
  if (!class_weighted || weight_sum == 0.0) return 0.0;
  return weight_totally_sync / weight_sum;
}

double RandomReport::effective_samples() const {
  if (!class_weighted || weight_sq_sum == 0.0) return 0.0;
  return weight_sum * weight_sum / weight_sq_sum;
}

double RandomReport::class_radius_3sigma() const {
  double ess = effective_samples();
  if (ess == 0.0) return 0.0;
  double p = class_fraction();
  return 3.0 * std::sqrt(p * (1.0 - p) / ess);
}

void RandomReport::merge(const RandomReport& other) {
  stats.merge(other.stats);
  attempts += other.attempts;
  weight_sum += other.weight_sum;
  weight_sq_sum += other.weight_sq_sum;
  weight_totally_sync += other.weight_totally_sync;
}

RandomReport random_chunk(const RandomModelConfig& cfg, std::uint64_t first, std::uint64_t last,
                          std::uint64_t budget) {
  validate_config(cfg);
  RandomReport r{cfg, StatsRecord::empty(cfg.n, cfg.k), 0};
  r.class_weighted = cfg.n <= kMaxCanonicalVertices;
  CensusOptions opts;
  opts.budget = budget;
  for (std::uint64_t i = first; i < last; ++i) {
    auto [d, attempts] = sample_with_attempts(cfg, i);
    r.attempts += attempts;
    CensusResult c = census(d, opts);
    r.stats.add(c.sync_colorings);
    if (r.class_weighted) {
      double w = static_cast<double>(canonical_form(d).automorphisms) * static_cast<double>(c.weight);
      r.weight_sum += w;
      r.weight_sq_sum += w * w;
      if (c.totally_synchronizing()) r.weight_totally_sync += w;
    }
  }
  return r;
}

RandomReport random_experiment(const RandomModelConfig& cfg, int workers, std::uint64_t budget) {
  validate_config(cfg);
  RandomReport out{cfg, StatsRecord::empty(cfg.n, cfg.k), 0};
  out.class_weighted = cfg.n <= kMaxCanonicalVertices;
  const std::size_t chunks = static_cast<std::size_t>((cfg.samples + kRandomChunkSamples - 1) / kRandomChunkSamples);
  std::function<RandomReport(std::size_t)> work = [&](std::size_t c) {
    std::uint64_t first = c * kRandomChunkSamples;
    return random_chunk(cfg, first, std::min(cfg.samples, first + kRandomChunkSamples), budget);
  };
  std::function<bool(std::size_t, RandomReport&&)> consume = [&](std::size_t, RandomReport&& part) {
    out.merge(part);
    return true;
  };
  run_ordered<RandomReport>(0, chunks, workers, work, consume);
  return out;
}

std::string random_csv_row(const RandomReport& r) {
  const StatsRecord& s = r.stats;
  std::string row = std::to_string(s.k) + "," + std::to_string(s.n) + "," + filter_name(r.config.filter) + "," +
                    std::to_string(s.class_size) + "," + std::to_string(r.config.seed);
  if (s.class_size == 0) return row + ",,,,,,,,,,";
  row += "," + to_decimal(s.min_sync);
  row += "," + round_half_up(s.min_sync, s.total_colorings, 3);
  row += "," + round_half_up(s.sum, s.class_size, 3);
  row += "," + round_half_up(s.sum, checked_mul(s.class_size, s.total_colorings), 3);
  row += "," + s.std_dev_text(3);
  row += "," + std::to_string(s.totally_sync);
  row += "," + round_half_up(s.totally_sync, s.class_size, 6);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", r.radius_3sigma());
  row += "," + std::string(buf);
  if (!r.class_weighted) return row + ",,";
  std::snprintf(buf, sizeof buf, ",%.6f", r.class_fraction());
  row += buf;
  std::snprintf(buf, sizeof buf, ",%.6f", r.class_radius_3sigma());
  row += buf;
  return row;
}

}  // namespace synccensus
