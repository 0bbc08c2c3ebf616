#include "mnl/prune.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mnl {

namespace {

constexpr double kWidenTol = 1e-12;  // solver tolerance, also endpoint dedup
constexpr double kEdgeTol = 1e-12;   // open upper end [0, r_i) probed at r_i - this

struct SearchRange {
  double lo = 0.0;
  double hi = -1.0;
  bool empty() const { return lo > hi; }
};

// window ∩ [0, r_i), the open end realized by stepping just inside.
SearchRange clip_range(ThetaInterval window, double reward_i) {
  SearchRange r;
  r.lo = std::max(window.lo, 0.0);
  r.hi = std::min(window.hi, reward_i - kEdgeTol);
  return r;
}

int locate(const ItemSet& items, std::span<const double> g, ItemId item) {
  if (g.size() != items.size()) {
    throw std::invalid_argument("preference vector length mismatch");
  }
  int idx = items.index_of(item);
  if (idx < 0) throw std::invalid_argument("tested item is not in the item set");
  return idx;
}

}  // namespace

ThetaInterval theta_interval(const ItemSet& items, const PreferenceBounds& bounds,
                             int capacity) {
  if (bounds.size() != items.size()) {
    throw std::invalid_argument("bounds length does not match item set");
  }
  double lo = optimal(items.with_prefs(bounds.lower), capacity).theta;
  double hi = optimal(items.with_prefs(bounds.upper), capacity).theta;
  return {std::max(lo - kWidenTol, 0.0), std::min(hi + kWidenTol, 1.0)};
}

bool survives_sweep(const ItemSet& items, std::span<const double> g, ItemId item,
                    ThetaInterval window, int capacity) {
  const int i = locate(items, g, item);
  const SearchRange range = clip_range(window, items.rewards[i]);
  if (range.empty()) return false;

  const double ri = items.rewards[i];
  const double gi = g[i];
  const int k = capacity;
  const int n = static_cast<int>(items.size());

  // "j preferred to i" is d(theta) = (r_j - theta) g_j - (r_i - theta) g_i > 0,
  // linear in theta, so each competitor covers a single sub-interval of the
  // range: everything, nothing, [lo, t) or (t, hi].
  int full_cover = 0;  // competitors covering the whole range
  struct Event {
    double x;
    int at;     // coverage delta effective exactly at x ([lo, t) ends there)
    int after;  // coverage delta effective just past x ((t, hi] starts there)
  };
  std::vector<Event> events;
  events.reserve(items.size());
  int active_from_lo = 0;

  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const double c = items.rewards[j] * g[j] - ri * gi;  // d(theta) = c + s*theta
    const double s = gi - g[j];
    if (s == 0.0) {
      if (c > 0.0) ++full_cover;
      continue;
    }
    const double t = -c / s;
    if (s < 0.0) {
      // d decreasing: covers theta < t
      if (t > range.hi) {
        ++full_cover;
      } else if (t > range.lo) {
        ++active_from_lo;
        events.push_back({t, -1, 0});
      }
    } else {
      // d increasing: covers theta > t
      if (t < range.lo) {
        ++full_cover;
      } else if (t < range.hi) {
        events.push_back({t, 0, +1});
      }
    }
  }

  int cover = full_cover + active_from_lo;
  if (cover < k) return true;  // theta = range.lo (and up to the first event)

  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.x < b.x; });
  // Merge endpoints closer than the dedup tolerance. A merge can only lower
  // the evaluated coverage, i.e. bias toward keeping the item.
  std::size_t idx = 0;
  while (idx < events.size()) {
    double x = events[idx].x;
    int at = 0, after = 0;
    while (idx < events.size() && events[idx].x <= x + kWidenTol) {
      at += events[idx].at;
      after += events[idx].after;
      ++idx;
    }
    const int cover_at_x = cover + at;
    if (cover_at_x < k) return true;  // theta = x
    cover = cover_at_x + after;
    if (cover < k) return true;  // any theta in the open stretch past x
  }
  return false;
}

bool survives_oracle(const ItemSet& items, std::span<const double> g, ItemId item,
                     ThetaInterval window, int capacity) {
  const int n = static_cast<int>(items.size());
  if (n > 50) throw std::invalid_argument("survives_oracle refuses n > 50");
  const int i = locate(items, g, item);
  const SearchRange range = clip_range(window, items.rewards[i]);
  if (range.empty()) return false;

  auto member = [&](double theta) {
    int preferred = 0;
    const double si = (items.rewards[i] - theta) * g[i];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if ((items.rewards[j] - theta) * g[j] > si) ++preferred;
    }
    return preferred < capacity;
  };

  std::vector<double> probes{range.lo, range.hi};
  auto add = [&](double t) {
    if (t >= range.lo && t <= range.hi) probes.push_back(t);
  };
  for (int a = 0; a < n; ++a) {
    add(items.rewards[a]);  // score line of a crosses zero
    for (int b = a + 1; b < n; ++b) {
      const double dg = g[a] - g[b];
      if (dg != 0.0) add((items.rewards[a] * g[a] - items.rewards[b] * g[b]) / dg);
    }
  }
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
  const std::size_t breaks = probes.size();
  for (std::size_t p = 0; p + 1 < breaks; ++p) {
    probes.push_back(0.5 * (probes[p] + probes[p + 1]));
  }
  return std::any_of(probes.begin(), probes.end(), member);
}

std::vector<ItemId> prune(const ItemSet& items, int capacity,
                          const PreferenceBounds& bounds) {
  const ThetaInterval window = theta_interval(items, bounds, capacity);
  std::vector<ItemId> kept;
  std::vector<double> g = bounds.lower;
  for (std::size_t i = 0; i < items.size(); ++i) {
    g[i] = bounds.upper[i];  // the tested item gets its upper bound
    if (survives_sweep(items, g, items.ids[i], window, capacity)) {
      kept.push_back(items.ids[i]);
    }
    g[i] = bounds.lower[i];
  }
  return kept;
}

}  // namespace mnl
