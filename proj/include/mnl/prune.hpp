#pragma once

#include <span>

#include "mnl/static_opt.hpp"

namespace mnl {

// Reward window [lo, hi] bracketing theta_v when the bounds sandwich the true
// preferences: lo is the optimum under the lower preference vector, hi under
// the upper one. Both are widened by the solver tolerance so the bracket
// stays valid under floating point.
struct ThetaInterval {
  double lo = 0.0;
  double hi = 0.0;
};

ThetaInterval theta_interval(const ItemSet& items, const PreferenceBounds& bounds,
                             int capacity);

// Whether some theta in window ∩ [0, r_i) admits item i into the top set
// under preference vector g, i.e. strictly fewer than K other items have a
// larger score (r_j - theta) g_j there. The window is closed at both ends;
// only the reward cap r_i is exclusive. Score ties do NOT count against i,
// which biases toward keeping the item -- deliberate conservatism.
//
// survives_sweep answers by sorting the endpoints of the per-competitor
// "j preferred to i" intervals and scanning them in O(n log n).
// survives_oracle enumerates every crossing of two score lines (and every
// zero crossing) in the window and probes membership at breakpoints,
// midpoints, and window endpoints; it refuses n > 50 and exists to check the
// sweep, not to be fast.
bool survives_sweep(const ItemSet& items, std::span<const double> g, ItemId item,
                    ThetaInterval window, int capacity);
bool survives_oracle(const ItemSet& items, std::span<const double> g, ItemId item,
                     ThetaInterval window, int capacity);

// Conservative candidate elimination. For each item i, tests survival under
// the i-favorable preference vector g = lower bounds everywhere except
// g_i = upper_i, over the window [theta_lower, theta_upper]. Whenever the
// bounds sandwich the true preferences, the returned candidate set contains
// the true best assortment.
std::vector<ItemId> prune(const ItemSet& items, int capacity,
                          const PreferenceBounds& bounds);

}  // namespace mnl
