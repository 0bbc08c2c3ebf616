#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "mnl/environment.hpp"
#include "mnl/prune.hpp"

namespace mnl {

// Round schedule shared by the elimination algorithms: precision halves every
// round while the cumulative per-item sample count roughly quadruples.
//   epsilon(tau) = 2^(-tau-3)
//   cumulative(tau) = ceil(coeff / epsilon^2 * ln(16 N (tau+1)^2 / delta))
// coeff is 32 for singleton exploration and 8 for set exploration.
class Schedule {
 public:
  Schedule(int n_items, double delta, double coeff);

  double epsilon(int round) const;
  std::uint64_t cumulative(int round) const;  // round -1 maps to 0

 private:
  double n_;
  double delta_;
  double coeff_;
};

struct RunResult {
  Assortment answer;
  std::uint64_t pulls = 0;      // environment counter delta over the run
  int rounds = 0;               // completed rounds
  bool budget_exhausted = false;
};

struct RunOptions {
  // Fixed-budget conversion: stop pulling when the counter would pass the
  // budget and answer with the static optimum over the surviving items under
  // the latest empirical preferences.
  std::optional<std::uint64_t> budget;

  // Per-round TSV trace:
  // round<TAB>epsilon<TAB>cumulative_T<TAB>surviving_ids<TAB>theta_lo<TAB>theta_hi
  std::ostream* trace = nullptr;

  // Testing hook: collapses each round's confidence interval to the given
  // per-item values (indexed by id-1) instead of the estimate +- epsilon.
  const std::vector<double>* exact_preference_oracle = nullptr;
};

// Fixed-confidence elimination with singleton exploration. Each surviving item
// is explored up to the schedule's cumulative count, preferences are bracketed
// by estimate +- epsilon, candidates are pruned, and the run stops once at
// most K candidates remain and every one clears the upper-bounded reward.
//
// The offer policy only changes between rounds, so this variant also suits
// batched settings where policy switches are expensive; the set-exploration
// variant below does not (each of its calls adapts to the previous feedback).
RunResult run_basic(Environment& env, double delta, const RunOptions& opts = {});

// Same elimination loop, but each round partitions the surviving items into
// groups of size at most K and explores whole groups; preferences are
// estimated by the average choice count per call, which extracts more
// information per pull.
RunResult run_improved(Environment& env, double delta, const RunOptions& opts = {});

// Round-robin baselines under a fixed pull budget. UnifB explores singletons
// in id order; UnifG cycles group exploration over a fixed partition. Both
// answer with the static optimum under the final empirical preferences.
RunResult run_unif_b(Environment& env, std::uint64_t budget);
RunResult run_unif_g(Environment& env, std::uint64_t budget);

// Deterministic partition used wherever a round explores sets: consecutive
// id-ordered groups of size at most group_size, one smaller remainder last.
std::vector<Assortment> partition_into_groups(const std::vector<ItemId>& ids,
                                              int group_size);

enum class Algo { basic, improved, unifb, unifg };

// Fixed-budget conversion of the two elimination algorithms.
RunResult run_fixed_budget(Algo which, Environment& env, double delta,
                           std::uint64_t budget);

}  // namespace mnl
