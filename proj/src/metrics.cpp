#include "mnl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mnl/static_opt.hpp"

namespace mnl {

namespace {
constexpr double kDegenerateTol = 1e-12;
}

GapProfile gap_profile(const Instance& inst) {
  const int n = inst.n();
  const int k = inst.capacity();

  GapProfile profile;
  OptimumResult opt = optimal(inst);
  profile.theta = opt.theta;
  profile.best = opt.best;
  if (profile.best.empty()) {
    throw DegenerateInstanceError("instance has an empty best assortment");
  }

  profile.advantages.resize(n);
  for (ItemId i = 1; i <= n; ++i) {
    profile.advantages[i - 1] = (inst.reward(i) - opt.theta) * inst.preference(i);
  }

  const bool full = static_cast<int>(profile.best.size()) == k;
  // When |best| = K the best set holds exactly the K largest advantages, so
  // eta^(K) is the smallest advantage inside it.
  double eta_k = std::numeric_limits<double>::infinity();
  for (ItemId i : profile.best.items()) {
    eta_k = std::min(eta_k, profile.advantages[i - 1]);
  }

  profile.gaps.assign(n, 0.0);
  double min_outside_gap = std::numeric_limits<double>::infinity();
  for (ItemId i = 1; i <= n; ++i) {
    if (profile.best.contains(i)) continue;
    double eta = profile.advantages[i - 1];
    double gap = full ? eta_k - eta : -eta;
    profile.gaps[i - 1] = gap;
    min_outside_gap = std::min(min_outside_gap, gap);
  }
  double min_margin = std::numeric_limits<double>::infinity();
  for (ItemId i : profile.best.items()) {
    min_margin = std::min(min_margin, inst.reward(i) - opt.theta);
  }
  const double shared_gap = std::min(min_outside_gap, min_margin);
  for (ItemId i : profile.best.items()) profile.gaps[i - 1] = shared_gap;

  double max_inv_sq = 0.0;
  for (ItemId i = 1; i <= n; ++i) {
    double gap = profile.gaps[i - 1];
    if (!(gap > kDegenerateTol)) {
      throw DegenerateInstanceError("reward gap vanishes at item " + std::to_string(i));
    }
    double inv_sq = 1.0 / (gap * gap);
    profile.h1 += inv_sq;
    profile.h2 += (inst.preference(i) + 1.0 / k) * inv_sq;
    max_inv_sq = std::max(max_inv_sq, inv_sq);
  }
  profile.h2 += max_inv_sq;
  return profile;
}

Instance make_lower_bound_instance(LowerBoundInstance which, int capacity,
                                   double delta) {
  if (capacity < 2) throw std::invalid_argument("lower-bound instances need K >= 2");
  if (!(delta > 0.0 && delta < 1.0 / (4.0 * capacity))) {
    throw std::invalid_argument("delta must lie in (0, 1/(4K))");
  }
  const int n = capacity;
  std::vector<double> rewards(n, 1.0);
  rewards[n - 1] = (1.0 - delta) / (2.0 - delta);
  std::vector<double> prefs(n, 1.0 / (capacity - 1));
  prefs[n - 1] = 1.0;
  if (which == LowerBoundInstance::I2) prefs[0] -= 2.0 * delta;
  return Instance::create(std::move(rewards), std::move(prefs), capacity);
}

Instance make_example_instance(int which, int n, int capacity, double epsilon) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  std::vector<double> rewards(n, 1.0);
  std::vector<double> prefs(n);
  if (which == 1) {
    if (capacity != 1) throw std::invalid_argument("example 1 requires K = 1");
    double root = std::sqrt(static_cast<double>(n));
    prefs.assign(n, 1.0 / root);
    prefs[0] = 1.0;
    if (n >= 2) prefs[1] = 1.0 - 1.0 / root;
  } else if (which == 2) {
    if (capacity < 1 || capacity > n) {
      throw std::invalid_argument("example 2 requires 1 <= K <= n");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0 / capacity)) {
      throw std::invalid_argument("epsilon must lie in (0, 1/K)");
    }
    prefs.assign(n, epsilon);
    std::fill(prefs.begin(), prefs.begin() + capacity, 1.0);
  } else {
    throw std::invalid_argument("example instance must be 1 or 2");
  }
  return Instance::create(std::move(rewards), std::move(prefs), capacity);
}

}  // namespace mnl
