#pragma once

// Helpers shared by the unit and acceptance suites: seeded random problem
// generators and a few statistical constants.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "mnl/instance.hpp"
#include "mnl/rng.hpp"

namespace testsupport {

inline int random_int(mnl::SplitMix64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Tie-free with probability one: rewards and preferences uniform on [0.05, 1].
inline mnl::Instance random_instance(mnl::SplitMix64& rng, int min_n, int max_n,
                                     int max_k) {
  const int n = random_int(rng, min_n, max_n);
  const int k = random_int(rng, 1, std::min(n, max_k));
  std::vector<double> rewards(n), prefs(n);
  for (int i = 0; i < n; ++i) {
    rewards[i] = rng.uniform(0.05, 1.0);
    prefs[i] = rng.uniform(0.05, 1.0);
  }
  return mnl::Instance::create(std::move(rewards), std::move(prefs), k);
}

// Uniformly random subset of 1..n with the given size cap.
inline mnl::Assortment random_assortment(mnl::SplitMix64& rng, int n, int max_size) {
  std::vector<mnl::ItemId> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = i + 1;
  for (int i = n - 1; i > 0; --i) {
    std::swap(ids[i], ids[random_int(rng, 0, i)]);
  }
  const int size = random_int(rng, 0, std::min(n, max_size));
  ids.resize(size);
  return mnl::Assortment(std::move(ids));
}

// The small fixed instance used across the algorithm suites.
inline mnl::Instance bench3_instance() {
  return mnl::Instance::create({0.8, 0.6, 0.4}, {0.5, 0.5, 0.5}, 2);
}

// Upper critical values of the chi-square distribution at significance 1e-3.
inline double chi_square_crit_1e3(int df) {
  static const double crit[] = {10.828, 13.816, 16.266, 18.467, 20.515,
                                22.458, 24.322, 26.124, 27.877, 29.588,
                                31.264, 32.909, 34.528, 36.123, 37.697};
  if (df < 1 || df > 15) throw std::invalid_argument("df out of table range");
  return crit[df - 1];
}

}  // namespace testsupport
