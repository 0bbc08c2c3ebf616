#include "mnl/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace mnl {

std::vector<Assortment> partition_into_groups(const std::vector<ItemId>& ids,
                                              int group_size) {
  if (group_size < 1) throw std::invalid_argument("group size must be >= 1");
  std::vector<Assortment> groups;
  for (std::size_t start = 0; start < ids.size();
       start += static_cast<std::size_t>(group_size)) {
    std::size_t stop = std::min(ids.size(), start + static_cast<std::size_t>(group_size));
    groups.emplace_back(std::vector<ItemId>(ids.begin() + start, ids.begin() + stop));
  }
  return groups;
}

Schedule::Schedule(int n_items, double delta, double coeff)
    : n_(n_items), delta_(delta), coeff_(coeff) {
  if (n_items < 1) throw std::invalid_argument("schedule needs n >= 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("confidence parameter must lie in (0, 1)");
  }
}

double Schedule::epsilon(int round) const { return std::ldexp(1.0, -round - 3); }

std::uint64_t Schedule::cumulative(int round) const {
  if (round < 0) return 0;
  const double eps = epsilon(round);
  const double tau1 = round + 1.0;
  const double t =
      std::ceil(coeff_ / (eps * eps) * std::log(16.0 * n_ * tau1 * tau1 / delta_));
  if (!(t < 4.6e18)) {  // ~2^62; a run this long is out of scope
    throw std::overflow_error("pull schedule exceeded the supported range");
  }
  return static_cast<std::uint64_t>(t);
}

namespace {

constexpr int kMaxRounds = 60;

struct ItemStats {
  std::vector<double> sum;          // basic: #no-purchase outputs; improved: sum of f_i
  std::vector<std::uint64_t> calls;  // explore / explore_set calls involving the item

  explicit ItemStats(int n) : sum(n + 1, 0.0), calls(n + 1, 0) {}
};

std::vector<ItemId> all_items(int n) {
  std::vector<ItemId> ids(n);
  std::iota(ids.begin(), ids.end(), 1);
  return ids;
}

ItemSet surviving_item_set(const Environment& env, const std::vector<ItemId>& ids) {
  ItemSet items;
  items.ids = ids;
  items.rewards.reserve(ids.size());
  for (ItemId id : ids) items.rewards.push_back(env.rewards()[id - 1]);
  items.prefs.assign(ids.size(), 0.0);
  return items;
}

// Inverse no-purchase-rate estimator, clamped into [0, 1]. An item that was
// always chosen (x = 0) estimates at the clamp.
double invert_no_purchase_rate(double x) {
  if (x <= 0.0) return 1.0;
  return std::clamp(1.0 / x - 1.0, 0.0, 1.0);
}

void write_trace(std::ostream* trace, int round, double eps, std::uint64_t cumulative,
                 const std::vector<ItemId>& surviving, ThetaInterval window) {
  if (trace == nullptr) return;
  *trace << round << '\t' << eps << '\t' << cumulative << '\t';
  for (std::size_t i = 0; i < surviving.size(); ++i) {
    if (i > 0) *trace << ',';
    *trace << surviving[i];
  }
  *trace << '\t' << window.lo << '\t' << window.hi << '\n';
}

struct RoundDecision {
  std::vector<ItemId> kept;
  bool stop = false;
};

// Shared tail of a round: bracket the estimates, prune, and test the stopping
// rule (at most K candidates, each with reward above the upper-bounded
// optimum).
RoundDecision prune_and_check(const Environment& env,
                              const std::vector<ItemId>& surviving,
                              const std::vector<double>& estimates, double eps,
                              const RunOptions& opts, int round,
                              std::uint64_t cumulative) {
  const int k = env.capacity();
  const std::size_t m = surviving.size();
  std::vector<double> lower(m), upper(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (opts.exact_preference_oracle != nullptr) {
      lower[j] = upper[j] = (*opts.exact_preference_oracle)[surviving[j] - 1];
    } else {
      // The set-exploration estimate can exceed 1 + eps on unlucky draws; the
      // extra clamp keeps the bound vectors ordered.
      lower[j] = std::clamp(estimates[surviving[j]] - eps, 0.0, 1.0);
      upper[j] = std::clamp(estimates[surviving[j]] + eps, 0.0, 1.0);
    }
  }
  ItemSet items = surviving_item_set(env, surviving);
  PreferenceBounds bounds = PreferenceBounds::create(std::move(lower), std::move(upper));

  RoundDecision decision;
  decision.kept = prune(items, k, bounds);
  if (decision.kept.empty()) {
    throw std::logic_error("elimination produced an empty candidate set");
  }
  write_trace(opts.trace, round, eps, cumulative, decision.kept,
              theta_interval(items, bounds, k));

  if (static_cast<int>(decision.kept.size()) <= k) {
    Assortment candidate{std::vector<ItemId>(decision.kept)};
    ItemSet upper_items =
        items.subset(decision.kept).with_prefs([&] {
          std::vector<double> b;
          for (ItemId id : decision.kept) {
            int idx = items.index_of(id);
            b.push_back(bounds.upper[idx]);
          }
          return b;
        }());
    const double upper_reward = expected_reward(candidate, upper_items);
    decision.stop = std::all_of(
        decision.kept.begin(), decision.kept.end(),
        [&](ItemId id) { return env.rewards()[id - 1] > upper_reward; });
  }
  return decision;
}

// Answer for a budget-exhausted run: static optimum over the surviving items
// under the latest estimates.
RunResult budget_answer(const Environment& env, const std::vector<ItemId>& surviving,
                        const std::vector<double>& estimates, int completed_rounds,
                        std::uint64_t start_pulls) {
  ItemSet items = surviving_item_set(env, surviving);
  for (std::size_t j = 0; j < surviving.size(); ++j) {
    items.prefs[j] = estimates[surviving[j]];
  }
  RunResult result;
  result.answer = optimal(items, env.capacity()).best;
  result.pulls = env.pulls() - start_pulls;
  result.rounds = completed_rounds;
  result.budget_exhausted = true;
  return result;
}

}  // namespace

RunResult run_basic(Environment& env, double delta, const RunOptions& opts) {
  const int n = env.num_items();
  const Schedule schedule(n, delta, 32.0);
  const std::uint64_t start_pulls = env.pulls();
  std::vector<ItemId> surviving = all_items(n);
  ItemStats stats(n);
  std::vector<double> estimates(n + 1, 0.0);

  for (int round = 0;; ++round) {
    if (round > kMaxRounds) {
      throw std::runtime_error("elimination failed to stop within the round cap");
    }
    const std::uint64_t target = schedule.cumulative(round);
    const std::uint64_t fresh = target - schedule.cumulative(round - 1);
    for (ItemId id : surviving) {
      for (std::uint64_t t = 0; t < fresh; ++t) {
        if (opts.budget && env.pulls() - start_pulls >= *opts.budget) {
          for (ItemId item : surviving) {
            estimates[item] = stats.calls[item] == 0
                                  ? 0.0
                                  : invert_no_purchase_rate(stats.sum[item] /
                                                            stats.calls[item]);
          }
          return budget_answer(env, surviving, estimates, round, start_pulls);
        }
        stats.sum[id] += env.explore(id);
        ++stats.calls[id];
      }
      estimates[id] = invert_no_purchase_rate(stats.sum[id] / stats.calls[id]);
    }

    RoundDecision decision = prune_and_check(env, surviving, estimates,
                                             schedule.epsilon(round), opts, round, target);
    if (decision.stop) {
      return {Assortment(std::move(decision.kept)), env.pulls() - start_pulls,
              round + 1, false};
    }
    surviving = std::move(decision.kept);
  }
}

RunResult run_improved(Environment& env, double delta, const RunOptions& opts) {
  const int n = env.num_items();
  const int k = env.capacity();
  const Schedule schedule(n, delta, 8.0);
  const std::uint64_t start_pulls = env.pulls();
  std::vector<ItemId> surviving = all_items(n);
  ItemStats stats(n);
  std::vector<double> estimates(n + 1, 0.0);

  auto refresh_estimates = [&](const std::vector<ItemId>& ids) {
    for (ItemId id : ids) {
      estimates[id] =
          stats.calls[id] == 0 ? 0.0 : stats.sum[id] / static_cast<double>(stats.calls[id]);
    }
  };

  for (int round = 0;; ++round) {
    if (round > kMaxRounds) {
      throw std::runtime_error("elimination failed to stop within the round cap");
    }
    const std::uint64_t target = schedule.cumulative(round);
    const std::uint64_t fresh = target - schedule.cumulative(round - 1);
    for (const Assortment& group : partition_into_groups(surviving, k)) {
      for (std::uint64_t t = 0; t < fresh; ++t) {
        std::uint64_t cap = Environment::max_offer_cap();
        if (opts.budget) {
          const std::uint64_t used = env.pulls() - start_pulls;
          if (used >= *opts.budget) {
            refresh_estimates(surviving);
            return budget_answer(env, surviving, estimates, round, start_pulls);
          }
          cap = std::min(cap, *opts.budget - used);
        }
        ExploreSetCounts counts = env.explore_set(group, cap);
        for (const auto& [id, f] : counts.counts) {
          stats.sum[id] += f;
          ++stats.calls[id];
        }
        if (counts.truncated) {
          if (opts.budget && env.pulls() - start_pulls >= *opts.budget) {
            refresh_estimates(surviving);
            return budget_answer(env, surviving, estimates, round, start_pulls);
          }
          throw std::runtime_error("explore_set exceeded the runaway offer cap");
        }
      }
    }
    refresh_estimates(surviving);

    RoundDecision decision = prune_and_check(env, surviving, estimates,
                                             schedule.epsilon(round), opts, round, target);
    if (decision.stop) {
      return {Assortment(std::move(decision.kept)), env.pulls() - start_pulls,
              round + 1, false};
    }
    surviving = std::move(decision.kept);
  }
}

RunResult run_unif_b(Environment& env, std::uint64_t budget) {
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  const int n = env.num_items();
  const std::uint64_t start_pulls = env.pulls();
  ItemStats stats(n);
  for (std::uint64_t t = 0; t < budget; ++t) {
    ItemId id = static_cast<ItemId>(t % n) + 1;
    stats.sum[id] += env.explore(id);
    ++stats.calls[id];
  }
  ItemSet items = surviving_item_set(env, all_items(n));
  for (ItemId id = 1; id <= n; ++id) {
    items.prefs[id - 1] = stats.calls[id] == 0
                              ? 0.0
                              : invert_no_purchase_rate(stats.sum[id] / stats.calls[id]);
  }
  RunResult result;
  result.answer = optimal(items, env.capacity()).best;
  result.pulls = env.pulls() - start_pulls;
  result.rounds = static_cast<int>(budget / n);
  result.budget_exhausted = true;
  return result;
}

RunResult run_unif_g(Environment& env, std::uint64_t budget) {
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  const int n = env.num_items();
  const std::uint64_t start_pulls = env.pulls();
  const std::vector<Assortment> groups = partition_into_groups(all_items(n), env.capacity());
  ItemStats stats(n);
  int cycles = 0;
  bool out_of_budget = false;
  while (!out_of_budget) {
    for (const Assortment& group : groups) {
      const std::uint64_t used = env.pulls() - start_pulls;
      if (used >= budget) {
        out_of_budget = true;
        break;
      }
      ExploreSetCounts counts = env.explore_set(group, budget - used);
      for (const auto& [id, f] : counts.counts) {
        stats.sum[id] += f;
        ++stats.calls[id];
      }
      if (counts.truncated) {
        out_of_budget = true;
        break;
      }
    }
    if (!out_of_budget) ++cycles;
  }
  ItemSet items = surviving_item_set(env, all_items(n));
  for (ItemId id = 1; id <= n; ++id) {
    items.prefs[id - 1] =
        stats.calls[id] == 0 ? 0.0 : stats.sum[id] / static_cast<double>(stats.calls[id]);
  }
  RunResult result;
  result.answer = optimal(items, env.capacity()).best;
  result.pulls = env.pulls() - start_pulls;
  result.rounds = cycles;
  result.budget_exhausted = true;
  return result;
}

RunResult run_fixed_budget(Algo which, Environment& env, double delta,
                           std::uint64_t budget) {
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  RunOptions opts;
  opts.budget = budget;
  switch (which) {
    case Algo::basic:
      return run_basic(env, delta, opts);
    case Algo::improved:
      return run_improved(env, delta, opts);
    default:
      throw std::invalid_argument("fixed-budget conversion applies to basic/improved only");
  }
}

}  // namespace mnl
