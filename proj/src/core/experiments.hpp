#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core/canonical.hpp"
#include "core/census.hpp"
#include "core/digraph.hpp"
#include "core/enumerate.hpp"
#include "core/numeric.hpp"

namespace synccensus {

/// Exact aggregate of synchronizing-coloring counts over a digraph class.
struct StatsRecord {
  int n = 0;
  int k = 0;
  std::uint64_t class_size = 0;
  u128 total_colorings = 0;  // (k!)^n
  u128 min_sync = 0;         // meaningful when class_size > 0
  u128 sum = 0;
  u128 sum_sq = 0;
  std::uint64_t totally_sync = 0;

  static StatsRecord empty(int n, int k);

  void add(u128 sync_colorings);
  void merge(const StatsRecord& other);

  Rational min_ratio() const;
  Rational avg() const;
  Rational avg_ratio() const;
  Rational totally_sync_fraction() const;
  double std_dev() const;                         // population
  std::string std_dev_text(int decimals) const;   // exact half-up rounding

  friend bool operator==(const StatsRecord&, const StatsRecord&) = default;
};

/// Histogram of synchronizing-coloring counts over a digraph class.
struct GapTable {
  int n = 0;
  int k = 0;
  std::map<u128, std::uint64_t> histogram;

  void add(u128 sync_colorings, std::uint64_t count = 1);
  void merge(const GapTable& other);
  std::uint64_t total() const;

  /// Maximal runs of multiples of k! strictly between the smallest and largest
  /// achieved values that no digraph achieves, as inclusive [first, last].
  std::vector<std::pair<u128, u128>> gaps() const;

  friend bool operator==(const GapTable&, const GapTable&) = default;
};

struct ClassCensus {
  StatsRecord stats;
  GapTable gaps;
};

/// Census of every nonisomorphic primitive digraph with (n, k).
ClassCensus census_class(int n, int k, int workers = 1, EnumerationMode mode = EnumerationMode::kSeeded,
                         std::uint64_t budget = kDefaultAutomatonBudget);

StatsRecord table1_stats(int n, int k, int workers = 1);

struct Table2Counts {
  std::uint64_t primitive = 0;
  std::uint64_t totally_sync = 0;
  Rational fraction() const { return primitive == 0 ? Rational() : Rational(totally_sync, primitive); }
};
Table2Counts table2_counts(int n, int k, int workers = 1);

GapTable gap_distribution(int n, int k, int workers = 1);

// CSV layout shared by the reports.
inline constexpr const char* kTable1Header = "k,n,class_size,min,min_ratio,avg,avg_ratio,std_dev";
inline constexpr const char* kTable2Header = "k,n,primitive,totally_sync,fraction";
inline constexpr const char* kGapsHeader = "k,n,sync_colorings,count";
inline constexpr const char* kRandomHeader =
    "k,n,filter,samples,seed,min,min_ratio,avg,avg_ratio,std_dev,totally_sync,fraction,radius_3sigma,class_fraction,class_radius_3sigma";

std::string table1_csv_row(const StatsRecord& s);
std::string table2_csv_row(const StatsRecord& s);

/// SplitMix64: small, seedable, and splittable by hashing (seed, index).
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();

  /// Independent stream for sample `index` of a run seeded with `seed`.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index);

  /// Unbiased value in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

enum class SampleFilter { kAll, kPrimitive };

std::string filter_name(SampleFilter f);

struct RandomModelConfig {
  int n = 0;
  int k = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  SampleFilter filter = SampleFilter::kAll;
  std::uint64_t rejection_cap = 1'000'000;  // attempts per sample
};

void validate_config(const RandomModelConfig& cfg);

/// Uniform model: every edge slot picks its destination uniformly and
/// independently. With the primitive filter, resamples until primitive.
/// Deterministic in (cfg.seed, sample_index). Throws Error(kBudget) when the
/// rejection cap is hit.
Digraph sample_random_digraph(const RandomModelConfig& cfg, std::uint64_t sample_index = 0);

struct RandomReport {
  RandomModelConfig config;
  StatsRecord stats;
  std::uint64_t attempts = 0;  // digraphs drawn including rejected ones
  // Isomorphism-class reweighting: a class with automorphism group A and
  // coloring weight W is hit with probability proportional to 1 / (|A| W),
  // so weighting each sample by |A| W estimates per-class quantities.
  // Only kept for n <= kMaxCanonicalVertices.
  bool class_weighted = false;
  double weight_sum = 0.0;
  double weight_sq_sum = 0.0;
  double weight_totally_sync = 0.0;

  double fraction() const;
  double radius_3sigma() const;  // 3 * sqrt(p (1 - p) / samples)
  double class_fraction() const;
  double effective_samples() const;  // (sum w)^2 / sum w^2
  double class_radius_3sigma() const;
  void merge(const RandomReport& other);
};

inline constexpr std::uint64_t kRandomChunkSamples = 1000;

/// Partial report over samples [first, last).
RandomReport random_chunk(const RandomModelConfig& cfg, std::uint64_t first, std::uint64_t last,
                          std::uint64_t budget = kDefaultAutomatonBudget);

RandomReport random_experiment(const RandomModelConfig& cfg, int workers = 1,
                               std::uint64_t budget = kDefaultAutomatonBudget);

std::string random_csv_row(const RandomReport& r);

}  // namespace synccensus
