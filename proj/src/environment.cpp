#include "mnl/environment.hpp"

#include <ostream>
#include <stdexcept>

namespace mnl {

std::uint32_t ExploreSetCounts::count_for(ItemId id) const {
  for (const auto& [item, count] : counts) {
    if (item == id) return count;
  }
  throw std::invalid_argument("item was not part of the explored set");
}

Environment::Environment(Instance inst, std::uint64_t seed)
    : inst_(std::move(inst)), rng_(seed) {}

void Environment::validate(const Assortment& s) const {
  for (ItemId id : s.items()) {
    if (id < 1 || id > inst_.n()) {
      throw std::invalid_argument("assortment contains item id outside the instance");
    }
  }
}

void Environment::log_offer(const Assortment& s, ItemId chosen) {
  *transcript_ << pulls_ << '\t';
  bool first = true;
  for (ItemId id : s.items()) {
    if (!first) *transcript_ << ',';
    *transcript_ << id;
    first = false;
  }
  *transcript_ << '\t' << chosen << '\n';
}

ItemId Environment::offer(const Assortment& s) {
  const double u = rng_.uniform();
  double denom = 1.0;
  for (ItemId id : s.items()) denom += inst_.preference(id);
  ItemId chosen = 0;
  double acc = 0.0;
  for (ItemId id : s.items()) {
    acc += inst_.preference(id) / denom;
    if (u < acc) {
      chosen = id;
      break;
    }
  }
  ++pulls_;
  if (transcript_ != nullptr) log_offer(s, chosen);
  return chosen;
}

ItemId Environment::sample_choice(const Assortment& s) {
  validate(s);
  if (static_cast<int>(s.size()) > inst_.capacity()) {
    throw std::invalid_argument("assortment exceeds the instance capacity");
  }
  return offer(s);
}

int Environment::explore(ItemId item) {
  if (item < 1 || item > inst_.n()) {
    throw std::invalid_argument("explore: item id outside the instance");
  }
  const double v = inst_.preference(item);
  const double u = rng_.uniform();
  const ItemId chosen = (u < v / (1.0 + v)) ? item : 0;
  ++pulls_;
  if (transcript_ != nullptr) {
    *transcript_ << pulls_ << '\t' << item << '\t' << chosen << '\n';
  }
  return chosen == 0 ? 1 : 0;
}

ExploreSetCounts Environment::explore_set(const Assortment& s) {
  ExploreSetCounts out = explore_set(s, max_offer_cap());
  if (out.truncated) {
    throw std::runtime_error("explore_set exceeded the runaway offer cap");
  }
  return out;
}

ExploreSetCounts Environment::explore_set(const Assortment& s,
                                          std::uint64_t max_offers) {
  validate(s);
  if (s.empty()) {
    throw std::invalid_argument("explore_set requires a nonempty assortment");
  }
  if (static_cast<int>(s.size()) > inst_.capacity()) {
    throw std::invalid_argument("assortment exceeds the instance capacity");
  }
  if (max_offers == 0) {
    throw std::invalid_argument("explore_set needs at least one offer");
  }
  // Choice thresholds are fixed across the call's offers; precompute them with
  // the same accumulation as offer() so draws stay bit-identical.
  const std::size_t m = s.size();
  std::vector<double> cum(m);
  double denom = 1.0;
  for (ItemId id : s.items()) denom += inst_.preference(id);
  double acc = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    acc += inst_.preference(s.items()[j]) / denom;
    cum[j] = acc;
  }

  ExploreSetCounts out;
  out.counts.reserve(m);
  for (ItemId id : s.items()) out.counts.emplace_back(id, 0);
  while (true) {
    const double u = rng_.uniform();
    std::size_t idx = 0;
    while (idx < m && u >= cum[idx]) ++idx;
    const ItemId chosen = idx < m ? s.items()[idx] : 0;
    ++pulls_;
    ++out.pulls_used;
    if (transcript_ != nullptr) log_offer(s, chosen);
    if (chosen == 0) break;
    ++out.counts[idx].second;
    if (out.pulls_used == max_offers) {
      out.truncated = true;
      break;
    }
  }
  return out;
}

}  // namespace mnl
