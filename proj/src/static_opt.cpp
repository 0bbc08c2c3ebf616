#include "mnl/static_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mnl {

ItemSet ItemSet::from_instance(const Instance& inst) {
  ItemSet items;
  items.ids.resize(inst.n());
  std::iota(items.ids.begin(), items.ids.end(), 1);
  items.rewards = inst.rewards();
  items.prefs = inst.preferences();
  return items;
}

int ItemSet::index_of(ItemId id) const {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) return -1;
  return static_cast<int>(it - ids.begin());
}

ItemSet ItemSet::with_prefs(std::vector<double> p) const {
  if (p.size() != ids.size()) {
    throw std::invalid_argument("preference vector length mismatch");
  }
  ItemSet out = *this;
  out.prefs = std::move(p);
  return out;
}

ItemSet ItemSet::subset(const std::vector<ItemId>& keep) const {
  ItemSet out;
  out.ids.reserve(keep.size());
  for (ItemId id : keep) {
    int idx = index_of(id);
    if (idx < 0) throw std::invalid_argument("subset id not present in item set");
    out.ids.push_back(id);
    out.rewards.push_back(rewards[idx]);
    out.prefs.push_back(prefs[idx]);
  }
  return out;
}

double expected_reward(const Assortment& s, const ItemSet& items) {
  double num = 0.0, denom = 1.0;
  for (ItemId id : s.items()) {
    int idx = items.index_of(id);
    if (idx < 0) throw std::invalid_argument("assortment id not present in item set");
    num += items.rewards[idx] * items.prefs[idx];
    denom += items.prefs[idx];
  }
  return num / denom;
}

namespace {

constexpr double kSolverTol = 1e-12;
constexpr int kMaxBisectIters = 60;

// Indices (into the item set) of the up-to-K best-scoring items at theta,
// non-positive r_i - theta filtered, ties toward the smaller index.
std::vector<int> top_indices(const ItemSet& items, double theta, int capacity) {
  const int n = static_cast<int>(items.size());
  const int k = std::min(capacity, n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto score = [&](int i) { return (items.rewards[i] - theta) * items.prefs[i]; };
  std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](int a, int b) {
    double sa = score(a), sb = score(b);
    if (sa != sb) return sa > sb;
    return a < b;
  });
  std::vector<int> out;
  out.reserve(k);
  for (int j = 0; j < k; ++j) {
    int i = order[j];
    if (items.rewards[i] - theta > 0.0) out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Assortment to_assortment(const ItemSet& items, const std::vector<int>& indices) {
  std::vector<ItemId> ids;
  ids.reserve(indices.size());
  for (int i : indices) ids.push_back(items.ids[i]);
  return Assortment(std::move(ids));
}

double reward_of_indices(const ItemSet& items, const std::vector<int>& indices) {
  double num = 0.0, denom = 1.0;
  for (int i : indices) {
    num += items.rewards[i] * items.prefs[i];
    denom += items.prefs[i];
  }
  return num / denom;
}

double score_sum(const ItemSet& items, const std::vector<int>& indices, double theta) {
  double sum = 0.0;
  for (int i : indices) sum += (items.rewards[i] - theta) * items.prefs[i];
  return sum;
}

}  // namespace

Assortment top_set(const ItemSet& items, double theta, int capacity) {
  return to_assortment(items, top_indices(items, theta, capacity));
}

bool theta_feasible(const ItemSet& items, double theta, int capacity) {
  return score_sum(items, top_indices(items, theta, capacity), theta) >= theta;
}

OptimumResult optimal(const ItemSet& items, int capacity) {
  if (items.size() == 0) return {0.0, Assortment{}};
  double lo = 0.0, hi = 1.0;  // feasible at 0, infeasible at 1 (rewards <= 1)
  for (int it = 0; it < kMaxBisectIters && hi - lo > kSolverTol; ++it) {
    double mid = 0.5 * (lo + hi);
    if (theta_feasible(items, mid, capacity)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  std::vector<int> best = top_indices(items, lo, capacity);
  double theta = reward_of_indices(items, best);
  // The top set just below theta_v can pick up items of zero advantage (for
  // example zero-preference items under estimated weights). They do not change
  // the reward; dropping them restores the smallest-cardinality maximizer.
  std::vector<int> trimmed;
  trimmed.reserve(best.size());
  for (int i : best) {
    if ((items.rewards[i] - theta) * items.prefs[i] > 0.0) trimmed.push_back(i);
  }
  if (trimmed.size() != best.size()) {
    best = std::move(trimmed);
    theta = reward_of_indices(items, best);
  }
  return {theta, to_assortment(items, best)};
}

OptimumResult optimal(const Instance& inst) {
  return optimal(ItemSet::from_instance(inst), inst.capacity());
}

OptimumResult brute_force_optimal(const ItemSet& items, int capacity) {
  const int n = static_cast<int>(items.size());
  if (n > 20) {
    throw std::invalid_argument("brute_force_optimal refuses n > 20 (got " + std::to_string(n) + ")");
  }
  const int k = std::min(capacity, n);
  double best_theta = 0.0;  // the empty assortment
  std::vector<int> best_indices;
  std::vector<int> comb;
  for (int size = 1; size <= k; ++size) {
    comb.resize(size);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
      double r = reward_of_indices(items, comb);
      if (r > best_theta) {
        best_theta = r;
        best_indices = comb;
      }
      // next lexicographic combination
      int pos = size - 1;
      while (pos >= 0 && comb[pos] == n - size + pos) --pos;
      if (pos < 0) break;
      ++comb[pos];
      for (int j = pos + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return {best_theta, to_assortment(items, best_indices)};
}

OptimumResult brute_force_optimal(const Instance& inst) {
  return brute_force_optimal(ItemSet::from_instance(inst), inst.capacity());
}

}  // namespace mnl
