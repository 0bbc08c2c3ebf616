#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mnl {

// Items are 1..n. Id 0 is the implicit no-purchase option with reward 0 and
// fixed preference weight 1; it is never stored.
using ItemId = int;

// Duplicate-free set of item ids kept in ascending order so that equality and
// printing are canonical.
class Assortment {
 public:
  Assortment() = default;
  explicit Assortment(std::vector<ItemId> ids);

  const std::vector<ItemId>& items() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool contains(ItemId id) const;

  bool operator==(const Assortment&) const = default;

 private:
  std::vector<ItemId> ids_;
};

// Ground truth of a problem: known rewards r_i, preference weights v_i, and
// the capacity K limiting assortment size.
//
// Strict validation requires r_i, v_i in (0, 1]. The relaxed flag admits
// zeros (degenerate simulator edges and adversarial tests); [0, 1] is still
// enforced. Capacities above n are clamped to n.
class Instance {
 public:
  static Instance create(std::vector<double> rewards,
                         std::vector<double> preferences, int capacity,
                         bool relaxed = false);

  int n() const { return static_cast<int>(rewards_.size()); }
  int capacity() const { return capacity_; }
  double reward(ItemId id) const { return rewards_[check_id(id)]; }
  double preference(ItemId id) const { return preferences_[check_id(id)]; }
  const std::vector<double>& rewards() const { return rewards_; }
  const std::vector<double>& preferences() const { return preferences_; }

 private:
  Instance() = default;
  std::size_t check_id(ItemId id) const;

  std::vector<double> rewards_;
  std::vector<double> preferences_;
  int capacity_ = 0;
};

// Per-item confidence intervals [lower_i, upper_i] sandwiching the unknown
// preferences. Invariant: 0 <= lower_i <= upper_i <= 1.
struct PreferenceBounds {
  std::vector<double> lower;
  std::vector<double> upper;

  static PreferenceBounds create(std::vector<double> lower,
                                 std::vector<double> upper);
  std::size_t size() const { return lower.size(); }
};

// Probability that a user offered S picks `chosen` (an element of S, or 0 for
// no purchase): v_i / (1 + sum_{j in S} v_j). `preferences[i-1]` is v_i.
double choice_prob(const Assortment& s, std::span<const double> preferences,
                   ItemId chosen);

// Expected reward R(S, v) = sum_{i in S} r_i v_i / (1 + sum_{j in S} v_j).
double expected_reward(const Assortment& s, std::span<const double> rewards,
                       std::span<const double> preferences);
double expected_reward(const Assortment& s, const Instance& inst);

// Equivalent test for R(S, v) >= theta that avoids the division:
// sum_{i in S} (r_i - theta) v_i >= theta.
bool reward_at_least(const Assortment& s, const Instance& inst, double theta);

// Plain-text instance format: first line "n K", then n lines "r_i v_i".
// Lines starting with '#' are ignored. LF endings, UTF-8.
Instance read_instance(std::istream& in);
Instance load_instance(const std::string& path);
void write_instance(std::ostream& out, const Instance& inst);

}  // namespace mnl
