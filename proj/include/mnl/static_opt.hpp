#pragma once

#include "mnl/instance.hpp"

namespace mnl {

// A working set of items with rewards and (true or estimated) preferences.
// The elimination algorithms operate on shrinking subsets of the original
// instance, so the surviving ids are carried explicitly alongside the aligned
// reward/preference arrays.
struct ItemSet {
  std::vector<ItemId> ids;  // ascending, unique
  std::vector<double> rewards;
  std::vector<double> prefs;

  static ItemSet from_instance(const Instance& inst);

  std::size_t size() const { return ids.size(); }
  int index_of(ItemId id) const;  // -1 when absent
  ItemSet with_prefs(std::vector<double> p) const;
  ItemSet subset(const std::vector<ItemId>& keep) const;
};

// Expected reward of a subset of an item set under the set's own preferences.
double expected_reward(const Assortment& s, const ItemSet& items);

struct OptimumResult {
  double theta = 0.0;  // optimal expected reward
  Assortment best;     // smallest-cardinality maximizer
};

// The up-to-K items with the largest scores (r_i - theta) v_i, with every
// selected item whose r_i - theta <= 0 removed afterwards. Score ties break
// toward the smaller item id.
Assortment top_set(const ItemSet& items, double theta, int capacity);

// Feasibility test for "theta <= theta_v": true iff the top set's score sum
// reaches theta. Monotone non-increasing in theta, which is what the solver's
// binary search relies on.
bool theta_feasible(const ItemSet& items, double theta, int capacity);

// Exact solver: binary search on theta_feasible down to width 1e-12, then
// re-evaluate the reward of the induced top set so the returned theta is the
// exact fixed point R(S, v) rather than a bisection approximation.
OptimumResult optimal(const ItemSet& items, int capacity);
OptimumResult optimal(const Instance& inst);

// Testing oracle: full enumeration of subsets of size <= K. Ties resolved by
// smaller cardinality, then lexicographic item order. Refuses n > 20.
OptimumResult brute_force_optimal(const ItemSet& items, int capacity);
OptimumResult brute_force_optimal(const Instance& inst);

}  // namespace mnl
