#include "mnl/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mnl {

Assortment::Assortment(std::vector<ItemId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) {
    throw std::invalid_argument("assortment contains duplicate item ids");
  }
  if (!ids_.empty() && ids_.front() < 1) {
    throw std::invalid_argument("item ids must be >= 1");
  }
}

bool Assortment::contains(ItemId id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

Instance Instance::create(std::vector<double> rewards,
                          std::vector<double> preferences, int capacity,
                          bool relaxed) {
  if (rewards.empty() || rewards.size() != preferences.size()) {
    throw std::invalid_argument("instance needs matching, nonempty reward and preference vectors");
  }
  if (capacity < 1) throw std::invalid_argument("capacity must be >= 1");
  const double low = relaxed ? 0.0 : std::nextafter(0.0, 1.0);
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    if (!(rewards[i] >= low && rewards[i] <= 1.0)) {
      throw std::invalid_argument("reward out of range at item " + std::to_string(i + 1));
    }
    if (!(preferences[i] >= low && preferences[i] <= 1.0)) {
      throw std::invalid_argument("preference out of range at item " + std::to_string(i + 1));
    }
  }
  Instance inst;
  inst.rewards_ = std::move(rewards);
  inst.preferences_ = std::move(preferences);
  inst.capacity_ = std::min<int>(capacity, static_cast<int>(inst.rewards_.size()));
  return inst;
}

std::size_t Instance::check_id(ItemId id) const {
  if (id < 1 || id > n()) {
    throw std::invalid_argument("item id " + std::to_string(id) + " out of range 1.." + std::to_string(n()));
  }
  return static_cast<std::size_t>(id - 1);
}

PreferenceBounds PreferenceBounds::create(std::vector<double> lower,
                                          std::vector<double> upper) {
  if (lower.size() != upper.size()) {
    throw std::invalid_argument("preference bound vectors differ in length");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(0.0 <= lower[i] && lower[i] <= upper[i] && upper[i] <= 1.0)) {
      throw std::invalid_argument("preference bounds must satisfy 0 <= a <= b <= 1 (item " +
                                  std::to_string(i + 1) + ")");
    }
  }
  return PreferenceBounds{std::move(lower), std::move(upper)};
}

namespace {

double pref_at(std::span<const double> preferences, ItemId id) {
  if (id < 1 || static_cast<std::size_t>(id) > preferences.size()) {
    throw std::invalid_argument("item id out of range of preference vector");
  }
  return preferences[static_cast<std::size_t>(id - 1)];
}

}  // namespace

double choice_prob(const Assortment& s, std::span<const double> preferences,
                   ItemId chosen) {
  double denom = 1.0;
  for (ItemId j : s.items()) denom += pref_at(preferences, j);
  if (chosen == 0) return 1.0 / denom;
  if (!s.contains(chosen)) {
    throw std::invalid_argument("chosen item is not in the offered assortment");
  }
  return pref_at(preferences, chosen) / denom;
}

double expected_reward(const Assortment& s, std::span<const double> rewards,
                       std::span<const double> preferences) {
  if (rewards.size() != preferences.size()) {
    throw std::invalid_argument("reward/preference vectors differ in length");
  }
  double num = 0.0;
  double denom = 1.0;
  for (ItemId j : s.items()) {
    double v = pref_at(preferences, j);
    num += rewards[static_cast<std::size_t>(j - 1)] * v;
    denom += v;
  }
  return num / denom;
}

double expected_reward(const Assortment& s, const Instance& inst) {
  return expected_reward(s, inst.rewards(), inst.preferences());
}

bool reward_at_least(const Assortment& s, const Instance& inst, double theta) {
  double margin = 0.0;
  for (ItemId j : s.items()) {
    margin += (inst.reward(j) - theta) * inst.preference(j);
  }
  return margin >= theta;
}

Instance read_instance(std::istream& in) {
  auto next_line = [&](std::string& line) -> bool {
    while (std::getline(in, line)) {
      std::size_t pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos) continue;  // blank
      if (line[pos] == '#') continue;          // comment
      return true;
    }
    return false;
  };

  std::string line;
  if (!next_line(line)) throw std::runtime_error("instance file: missing header line");
  std::istringstream header(line);
  int n = 0, k = 0;
  if (!(header >> n >> k) || n < 1) {
    throw std::runtime_error("instance file: header must be 'n K'");
  }
  std::vector<double> rewards(n), prefs(n);
  for (int i = 0; i < n; ++i) {
    if (!next_line(line)) {
      throw std::runtime_error("instance file: expected " + std::to_string(n) +
                               " item lines, got " + std::to_string(i));
    }
    std::istringstream row(line);
    if (!(row >> rewards[i] >> prefs[i])) {
      throw std::runtime_error("instance file: malformed item line '" + line + "'");
    }
  }
  return Instance::create(std::move(rewards), std::move(prefs), k);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  return read_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst) {
  char buf[64];
  out << inst.n() << ' ' << inst.capacity() << '\n';
  for (ItemId i = 1; i <= inst.n(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g", inst.reward(i), inst.preference(i));
    out << buf << '\n';
  }
}

}  // namespace mnl
