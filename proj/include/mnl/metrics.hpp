#pragma once

#include <stdexcept>

#include "mnl/instance.hpp"

namespace mnl {

// Raised when some reward gap vanishes (within 1e-12): the instance has no
// unique best assortment and its complexity is unbounded.
struct DegenerateInstanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Item-level difficulty summary of an instance.
//
// advantages: eta_i = (r_i - theta) v_i.
// gaps: Delta_i. For i outside the best set, Delta_i = eta^(K) - eta_i when
// |best| = K and -eta_i otherwise. Every i inside the best set shares
// Delta_i = min{ min_{j outside} Delta_j, min_{j inside} (r_j - theta) };
// with no outside items the first term is +infinity. When |best| = K this
// coincides with the order-statistic form eta^(K) - eta^(K+1) combined with
// the reward margin.
//
// h1 = sum_i 1/Delta_i^2
// h2 = sum_i (v_i + 1/K)/Delta_i^2 + max_i 1/Delta_i^2
struct GapProfile {
  double theta = 0.0;
  Assortment best;
  std::vector<double> advantages;
  std::vector<double> gaps;
  double h1 = 0.0;
  double h2 = 0.0;
};

GapProfile gap_profile(const Instance& inst);

// The two K-item instances used for worst-case difficulty analysis. Both have
// rewards (1, ..., 1, (1-delta)/(2-delta)). I1 has preferences
// (1/(K-1), ..., 1/(K-1), 1); I2 lowers the first preference by 2*delta.
// Requires K >= 2 and delta in (0, 1/(4K)).
enum class LowerBoundInstance { I1, I2 };
Instance make_lower_bound_instance(LowerBoundInstance which, int capacity,
                                   double delta);

// Named example instances, all rewards 1.
//   which = 1: K must be 1; v = (1, 1 - 1/sqrt(N), 1/sqrt(N), ..., 1/sqrt(N)).
//   which = 2: v_1..v_K = 1, v_{K+1}..v_N = epsilon with epsilon in (0, 1/K).
Instance make_example_instance(int which, int n, int capacity,
                               double epsilon = 0.0);

}  // namespace mnl
