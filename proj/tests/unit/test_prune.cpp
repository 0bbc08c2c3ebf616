#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "../support.hpp"
#include "mnl/metrics.hpp"
#include "mnl/prune.hpp"

using namespace mnl;
using testsupport::random_instance;

namespace {

PreferenceBounds exact_bounds(const Instance& inst) {
  return PreferenceBounds::create(inst.preferences(), inst.preferences());
}

PreferenceBounds boxed_bounds(const Instance& inst, double radius) {
  std::vector<double> lo(inst.n()), hi(inst.n());
  for (int i = 0; i < inst.n(); ++i) {
    lo[i] = std::max(inst.preferences()[i] - radius, 0.0);
    hi[i] = std::min(inst.preferences()[i] + radius, 1.0);
  }
  return PreferenceBounds::create(std::move(lo), std::move(hi));
}

bool contains_all(const std::vector<ItemId>& kept, const Assortment& want) {
  return std::all_of(want.items().begin(), want.items().end(), [&](ItemId id) {
    return std::find(kept.begin(), kept.end(), id) != kept.end();
  });
}

}  // namespace

TEST_CASE("reward window degenerates with exact bounds") {
  Instance inst = testsupport::bench3_instance();
  ThetaInterval window = theta_interval(ItemSet::from_instance(inst), exact_bounds(inst), 2);
  CHECK(window.lo <= window.hi);
  CHECK(std::abs(window.lo - 0.35) <= 2e-12);
  CHECK(std::abs(window.hi - 0.35) <= 2e-12);
}

TEST_CASE("reward window brackets the truth under valid bounds") {
  Instance i1 = make_lower_bound_instance(LowerBoundInstance::I1, 2, 0.1);
  ThetaInterval window = theta_interval(ItemSet::from_instance(i1), boxed_bounds(i1, 0.05), 2);
  CHECK(window.lo <= 0.5);
  CHECK(window.hi >= 0.5);
}

TEST_CASE("all-zero lower bounds give a zero floor") {
  Instance inst = testsupport::bench3_instance();
  PreferenceBounds zeros = PreferenceBounds::create({0, 0, 0}, {1, 1, 1});
  ThetaInterval window = theta_interval(ItemSet::from_instance(inst), zeros, 2);
  CHECK(window.lo == 0.0);
}

TEST_CASE("survival on a single item") {
  ItemSet only;
  only.ids = {1};
  only.rewards = {0.7};
  only.prefs = {0.5};
  std::vector<double> g{0.5};
  CHECK(survives_sweep(only, g, 1, {0.1, 0.4}, 1));
  CHECK(survives_oracle(only, g, 1, {0.1, 0.4}, 1));
  // window entirely above the reward leaves no candidate theta
  CHECK_FALSE(survives_sweep(only, g, 1, {0.8, 0.9}, 1));
  CHECK_FALSE(survives_oracle(only, g, 1, {0.8, 0.9}, 1));
}

TEST_CASE("survival at the three-item optimum") {
  Instance inst = testsupport::bench3_instance();
  ItemSet items = ItemSet::from_instance(inst);
  const std::vector<double>& g = inst.preferences();
  CHECK(survives_sweep(items, g, 1, {0.35, 0.35}, 2));
  CHECK(survives_oracle(items, g, 1, {0.35, 0.35}, 2));
  CHECK_FALSE(survives_sweep(items, g, 3, {0.35, 0.35}, 2));
  CHECK_FALSE(survives_oracle(items, g, 3, {0.35, 0.35}, 2));
}

TEST_CASE("ample capacity keeps every item with reward above the window") {
  SplitMix64 rng(83);
  for (int trial = 0; trial < 50; ++trial) {
    Instance inst = random_instance(rng, 2, 6, 6);
    ItemSet items = ItemSet::from_instance(inst);
    std::vector<double> g = inst.preferences();
    ThetaInterval window{0.0, rng.uniform(0.0, 0.5)};
    for (ItemId i = 1; i <= inst.n(); ++i) {
      if (inst.reward(i) - 1e-12 < window.lo) continue;
      CHECK(survives_sweep(items, g, i, window, inst.n()));
    }
  }
}

TEST_CASE("oracle refuses oversized inputs") {
  ItemSet big;
  for (int i = 1; i <= 51; ++i) {
    big.ids.push_back(i);
    big.rewards.push_back(0.5);
    big.prefs.push_back(0.5);
  }
  std::vector<double> g(51, 0.5);
  CHECK_THROWS_AS(survives_oracle(big, g, 1, {0.0, 1.0}, 3), std::invalid_argument);
}

TEST_CASE("pruning with exact bounds recovers the best assortment") {
  Instance inst = testsupport::bench3_instance();
  std::vector<ItemId> kept = prune(ItemSet::from_instance(inst), 2, exact_bounds(inst));
  CHECK(kept == std::vector<ItemId>{1, 2});
}

TEST_CASE("pruning the hard instance keeps its best item") {
  Instance i1 = make_lower_bound_instance(LowerBoundInstance::I1, 2, 0.1);
  std::vector<ItemId> kept = prune(ItemSet::from_instance(i1), 2, boxed_bounds(i1, 0.001));
  CHECK(contains_all(kept, Assortment({1})));
}

TEST_CASE("pruning with vacuous bounds matches the per-item oracle") {
  Instance inst = Instance::create({0.9, 0.5, 0.2}, {0.3, 0.6, 0.8}, 1);
  ItemSet items = ItemSet::from_instance(inst);
  PreferenceBounds wide = PreferenceBounds::create({0, 0, 0}, {1, 1, 1});
  std::vector<ItemId> kept = prune(items, 1, wide);
  ThetaInterval window = theta_interval(items, wide, 1);
  for (ItemId i = 1; i <= 3; ++i) {
    std::vector<double> g = wide.lower;
    g[i - 1] = wide.upper[i - 1];
    bool expect = survives_oracle(items, g, i, window, 1);
    CHECK((std::find(kept.begin(), kept.end(), i) != kept.end()) == expect);
  }
}

TEST_CASE("sweep agrees with the breakpoint oracle") {
  SplitMix64 rng(89);
  for (int query = 0; query < 2000; ++query) {
    const int n = testsupport::random_int(rng, 1, 12);
    const int k = testsupport::random_int(rng, 1, n);
    ItemSet items;
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) {
      items.ids.push_back(i + 1);
      items.rewards.push_back(rng.uniform(0.05, 1.0));
      items.prefs.push_back(rng.uniform(0.05, 1.0));
      g[i] = (rng() % 10 == 0) ? 0.0 : rng.uniform(0.0, 1.0);
    }
    double lo = rng.uniform(0.0, 0.9);
    double hi = (rng() % 8 == 0) ? lo : std::min(lo + rng.uniform(0.0, 0.4), 1.0);
    ItemId tested = testsupport::random_int(rng, 1, n);
    CHECK(survives_sweep(items, g, tested, {lo, hi}, k) ==
          survives_oracle(items, g, tested, {lo, hi}, k));
  }
}

TEST_CASE("valid bounds never prune the best assortment") {
  SplitMix64 rng(97);
  for (int trial = 0; trial < 500; ++trial) {
    Instance inst = random_instance(rng, 1, 10, 4);
    std::vector<double> lo(inst.n()), hi(inst.n());
    for (int i = 0; i < inst.n(); ++i) {
      lo[i] = std::max(inst.preferences()[i] - rng.uniform(0.0, 0.3), 0.0);
      hi[i] = std::min(inst.preferences()[i] + rng.uniform(0.0, 0.3), 1.0);
    }
    std::vector<ItemId> kept =
        prune(ItemSet::from_instance(inst), inst.capacity(),
              PreferenceBounds::create(std::move(lo), std::move(hi)));
    CHECK(contains_all(kept, brute_force_optimal(inst).best));
  }
}

TEST_CASE("tight bounds eliminate every item with a large gap") {
  SplitMix64 rng(101);
  int checked = 0;
  while (checked < 500) {
    Instance inst = random_instance(rng, 2, 10, 4);
    GapProfile profile;
    try {
      profile = gap_profile(inst);
    } catch (const DegenerateInstanceError&) {
      continue;
    }
    if (static_cast<int>(profile.best.size()) == inst.n()) continue;

    double outside_min = 1e300;
    for (ItemId i = 1; i <= inst.n(); ++i) {
      if (!profile.best.contains(i)) outside_min = std::min(outside_min, profile.gaps[i - 1]);
    }
    const double eps = outside_min / 8.5;  // every outside gap exceeds 8 eps
    const double radius = eps / inst.capacity();
    std::vector<double> lo(inst.n()), hi(inst.n());
    for (int i = 0; i < inst.n(); ++i) {
      lo[i] = std::max(inst.preferences()[i] - rng.uniform(0.0, radius), 0.0);
      hi[i] = std::min(inst.preferences()[i] + rng.uniform(0.0, radius), 1.0);
    }
    std::vector<ItemId> kept =
        prune(ItemSet::from_instance(inst), inst.capacity(),
              PreferenceBounds::create(std::move(lo), std::move(hi)));
    for (ItemId id : kept) CHECK(profile.best.contains(id));
    CHECK(contains_all(kept, profile.best));
    ++checked;
  }
}
