#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>

#include "mnl/instance.hpp"
#include "mnl/rng.hpp"

namespace mnl {

// Result of one explore_set call: how often each offered item was chosen
// before the first no-purchase, and how many offers that took. Each count is
// geometric with success probability 1/(1 + v_i), so its mean is v_i.
struct ExploreSetCounts {
  std::vector<std::pair<ItemId, std::uint32_t>> counts;  // ascending by id
  std::uint64_t pulls_used = 0;
  bool truncated = false;  // offer cap hit before a no-purchase ended the call

  std::uint32_t count_for(ItemId id) const;
};

// Seeded stochastic MNL environment. Holds the hidden instance, a
// deterministic random stream, and the pull counter; learners only ever see
// rewards, sizes, and sampled feedback -- never the true preferences.
//
// One environment is single-threaded (mutable stream and counter). Run
// concurrent trials on separate environments.
class Environment {
 public:
  Environment(Instance inst, std::uint64_t seed);

  int num_items() const { return inst_.n(); }
  int capacity() const { return inst_.capacity(); }
  const std::vector<double>& rewards() const { return inst_.rewards(); }
  std::uint64_t pulls() const { return pulls_; }

  // One offer of S; returns the chosen item id, or 0 for no purchase.
  ItemId sample_choice(const Assortment& s);

  // One offer of the singleton {item}; returns 1 on no purchase, else 0.
  // Bernoulli with mean 1/(1 + v_item).
  int explore(ItemId item);

  // Repeatedly offers S until a no-purchase, tallying choices. S must be
  // nonempty and within capacity. max_offers caps the number of offers; the
  // default cap guards against runaway loops and throws when reached, while an
  // explicit cap returns truncated counts instead (budgeted runs).
  ExploreSetCounts explore_set(const Assortment& s);
  ExploreSetCounts explore_set(const Assortment& s, std::uint64_t max_offers);

  // Optional replay log, one line per offer:
  // pull_index<TAB>comma-separated-ids<TAB>feedback_id
  void set_transcript(std::ostream* sink) { transcript_ = sink; }

  // Runaway guard on a single explore_set call.
  static constexpr std::uint64_t max_offer_cap() { return 1'000'000'000; }

 private:
  ItemId offer(const Assortment& s);
  void log_offer(const Assortment& s, ItemId chosen);
  void validate(const Assortment& s) const;

  Instance inst_;
  SplitMix64 rng_;
  std::uint64_t pulls_ = 0;
  std::ostream* transcript_ = nullptr;
};

}  // namespace mnl
