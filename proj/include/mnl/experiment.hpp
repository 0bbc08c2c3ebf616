#pragma once

#include <optional>
#include <string>

#include "mnl/algorithms.hpp"
#include "mnl/metrics.hpp"

namespace mnl {

// Rewards and preferences i.i.d. uniform on [0.1, 0.6].
Instance gen_uniform(int n, int capacity, std::uint64_t seed);

// Preferences i.i.d. uniform on (0, 1]; rewards i.i.d. Normal(0.5, 0.01)
// truncated to (0, 1] by resampling.
Instance gen_gaussian(int n, int capacity, std::uint64_t seed);

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Item built from a ratings table: one CSV row per rating event with header
// columns item_id,rating. Items whose rating count falls in
// [min_count, max_count] survive; r_i = mean rating / rating_scale and
// v_i = count / count_denominator, both capped at 1. Surviving items are
// reindexed 1..n by ascending original id (numeric order when every id
// parses as an integer, lexicographic otherwise).
//
// allow_extra_columns locates item_id and rating by name in a wider header
// and ignores the other columns (common ratings exports carry extras).
struct RatingsIngest {
  Instance instance;
  std::vector<std::string> original_ids;  // original_ids[i-1] is item i
};
RatingsIngest ingest_ratings(const std::string& csv_path, long min_count,
                             long max_count, double rating_scale,
                             double count_denominator, int capacity,
                             bool allow_extra_columns = false);

enum class InstanceKind { uniform, gaussian, i1, i2, example1, example2, file, ratings };

struct GeneratorSpec {
  InstanceKind kind = InstanceKind::uniform;
  int n = 0;
  int k = 1;
  double epsilon = 0.0;      // example2
  double delta_param = 0.0;  // i1 / i2
};

struct RatingsSpec {
  std::string path;
  long min_count = 0;
  long max_count = 0;
  double rating_scale = 5.0;
  double count_denominator = 1.0;
  int k = 1;
  bool allow_extra_columns = false;
};

struct ExperimentConfig {
  Algo algo = Algo::basic;
  // exactly one instance source
  std::optional<GeneratorSpec> generator;
  std::optional<std::string> instance_file;
  std::optional<RatingsSpec> ratings;

  double delta = 0.1;
  std::optional<std::uint64_t> budget;
  int trials = 1;
  std::uint64_t master_seed = 0;
  std::string out_path;
  std::optional<std::string> trace_path;  // per-round trace of trial 0
  int jobs = 0;                           // worker threads; 0 = hardware
  bool timing = false;  // real wall_ms per trial; breaks byte-reproducibility
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  std::optional<bool> correct;  // empty when no ground truth (file instances)
  std::uint64_t pulls = 0;
  int rounds = 0;
  Assortment answer;
  std::int64_t wall_ms = 0;
};

struct ExperimentSummary {
  std::vector<TrialRecord> records;
  std::optional<double> error_rate;
  double mean_pulls = 0.0;
  double stddev_pulls = 0.0;  // population standard deviation
  double mean_rounds = 0.0;
};

// Runs the configured trials (in a worker pool), writes one CSV row per trial
// plus a summary row keyed SUMMARY, and returns the summary. Output is
// byte-reproducible for a fixed config unless timing is enabled.
ExperimentSummary run_experiment(const ExperimentConfig& config);

// The instance a config resolves to (trial 0's instance when the source is a
// seeded generator).
Instance resolve_instance(const ExperimentConfig& config);

// GapProfile CSV for the configured instance (trial 0's instance when the
// source is a seeded generator).
void write_metrics_csv(const ExperimentConfig& config);

}  // namespace mnl
