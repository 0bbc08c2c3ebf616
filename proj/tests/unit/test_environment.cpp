#include <doctest.h>

#include <cmath>
#include <sstream>

#include "../support.hpp"
#include "mnl/environment.hpp"

using namespace mnl;
using testsupport::chi_square_crit_1e3;
using testsupport::random_assortment;
using testsupport::random_instance;

TEST_CASE("empty offer always yields no purchase") {
  Environment env(testsupport::bench3_instance(), 1);
  for (int i = 0; i < 100; ++i) CHECK(env.sample_choice(Assortment{}) == 0);
  CHECK(env.pulls() == 100);
}

TEST_CASE("singleton choice frequencies match the model") {
  Environment env(Instance::create({1.0}, {1.0}, 1), 2);
  int none = 0;
  for (int i = 0; i < 100000; ++i) {
    if (env.sample_choice(Assortment({1})) == 0) ++none;
  }
  double rate = none / 100000.0;
  CHECK(rate >= 0.49);
  CHECK(rate <= 0.51);
}

TEST_CASE("pair choice frequencies match the model") {
  Environment env(Instance::create({0.5, 0.5}, {0.5, 0.4}, 2), 3);
  int hits[3] = {0, 0, 0};
  for (int i = 0; i < 100000; ++i) ++hits[env.sample_choice(Assortment({1, 2}))];
  CHECK(std::abs(hits[1] / 100000.0 - 0.5 / 1.9) <= 0.01);
  CHECK(std::abs(hits[2] / 100000.0 - 0.4 / 1.9) <= 0.01);
  CHECK(std::abs(hits[0] / 100000.0 - 1.0 / 1.9) <= 0.01);
}

TEST_CASE("singleton exploration is a no-purchase indicator") {
  Environment zero(Instance::create({0.5}, {0.0}, 1, /*relaxed=*/true), 4);
  for (int i = 0; i < 200; ++i) CHECK(zero.explore(1) == 1);

  Environment half(Instance::create({0.5}, {1.0}, 1), 5);
  long ones = 0;
  for (int i = 0; i < 100000; ++i) ones += half.explore(1);
  CHECK(ones / 100000.0 >= 0.49);
  CHECK(ones / 100000.0 <= 0.51);

  Environment quarter(Instance::create({0.5}, {0.25}, 1), 6);
  ones = 0;
  for (int i = 0; i < 100000; ++i) ones += quarter.explore(1);
  CHECK(ones / 100000.0 >= 0.79);  // mean 1/1.25 = 0.8
  CHECK(ones / 100000.0 <= 0.81);
}

TEST_CASE("set exploration counts are geometric with mean v") {
  Environment env(Instance::create({0.5}, {1.0}, 1), 7);
  double total = 0.0;
  for (int i = 0; i < 10000; ++i) total += env.explore_set(Assortment({1})).count_for(1);
  CHECK(total / 10000.0 >= 0.95);
  CHECK(total / 10000.0 <= 1.05);
}

TEST_CASE("set exploration pull counts follow the stopped sum") {
  Environment env(Instance::create({0.5, 0.5}, {0.5, 0.4}, 2), 8);
  double pulls = 0.0;
  for (int i = 0; i < 10000; ++i) pulls += env.explore_set(Assortment({1, 2})).pulls_used;
  CHECK(pulls / 10000.0 >= 1.86);  // 1 + 0.5 + 0.4 = 1.9
  CHECK(pulls / 10000.0 <= 1.94);
}

TEST_CASE("set exploration of a weightless item ends immediately") {
  Environment env(Instance::create({0.5}, {0.0}, 1, /*relaxed=*/true), 9);
  ExploreSetCounts counts = env.explore_set(Assortment({1}));
  CHECK(counts.count_for(1) == 0);
  CHECK(counts.pulls_used == 1);
  CHECK_FALSE(counts.truncated);
}

TEST_CASE("set exploration validates its input") {
  Environment env(testsupport::bench3_instance(), 10);
  CHECK_THROWS_AS(env.explore_set(Assortment{}), std::invalid_argument);
  CHECK_THROWS_AS(env.explore_set(Assortment({1, 2, 3})), std::invalid_argument);  // K = 2
  CHECK_THROWS_AS(env.explore_set(Assortment({9})), std::invalid_argument);
  CHECK(env.pulls() == 0);  // rejected offers consume nothing
}

TEST_CASE("invalid ids consume no pull") {
  Environment env(testsupport::bench3_instance(), 11);
  CHECK_THROWS_AS(env.explore(0), std::invalid_argument);
  CHECK_THROWS_AS(env.explore(4), std::invalid_argument);
  CHECK_THROWS_AS(env.sample_choice(Assortment({7})), std::invalid_argument);
  CHECK(env.pulls() == 0);
}

TEST_CASE("offer caps truncate set exploration") {
  // v = 1 on both items: no-purchase chance is 1/3 per offer, so 1 offer
  // usually truncates
  Environment env(Instance::create({0.5, 0.5}, {1.0, 1.0}, 2), 12);
  int truncated = 0;
  for (int i = 0; i < 200; ++i) {
    ExploreSetCounts counts = env.explore_set(Assortment({1, 2}), 1);
    CHECK(counts.pulls_used == 1);
    if (counts.truncated) ++truncated;
  }
  CHECK(truncated > 0);
}

TEST_CASE("identical seeds replay identical transcripts") {
  auto drive = [](Environment& env) {
    std::ostringstream log;
    env.set_transcript(&log);
    env.sample_choice(Assortment({1, 2}));
    env.explore(3);
    env.explore_set(Assortment({2, 3}));
    env.explore(1);
    env.sample_choice(Assortment({2}));
    return log.str();
  };
  Environment a(testsupport::bench3_instance(), 991);
  Environment b(testsupport::bench3_instance(), 991);
  std::string ta = drive(a);
  std::string tb = drive(b);
  CHECK(ta == tb);
  CHECK(!ta.empty());
  CHECK(a.pulls() == b.pulls());

  Environment c(testsupport::bench3_instance(), 992);
  CHECK(drive(c) != ta);  // different stream, different draws
}

TEST_CASE("pull accounting is exact") {
  Environment env(testsupport::bench3_instance(), 13);
  std::uint64_t expected = 0;
  for (int i = 0; i < 57; ++i) {
    env.explore(1 + i % 3);
    ++expected;
  }
  for (int i = 0; i < 23; ++i) {
    expected += env.explore_set(Assortment({1, 2})).pulls_used;
  }
  CHECK(env.pulls() == expected);
}

TEST_CASE("choice frequencies pass goodness of fit") {
  SplitMix64 rng(77);
  const int draws = 100000;
  for (int pair = 0; pair < 20; ++pair) {
    Instance inst = random_instance(rng, 2, 10, 10);
    Assortment s;
    do {
      s = random_assortment(rng, inst.n(), inst.capacity());
    } while (s.empty());
    Environment env(inst, rng());

    std::vector<long> counts(inst.n() + 1, 0);
    for (int d = 0; d < draws; ++d) ++counts[env.sample_choice(s)];

    double stat = 0.0;
    auto cell = [&](ItemId id) {
      double expect = draws * choice_prob(s, inst.preferences(), id);
      double diff = counts[id] - expect;
      stat += diff * diff / expect;
    };
    cell(0);
    for (ItemId i : s.items()) cell(i);
    CHECK(stat < chi_square_crit_1e3(static_cast<int>(s.size())));
  }
}

TEST_CASE("set exploration means concentrate like geometric sums") {
  // additive deviation t = 0.05 over n = 10^4 calls; the tail bound allows
  // failure rate 2 exp(-n t^2 / 8) ~ 0.0879 per repetition
  Instance inst = Instance::create({0.5}, {0.5}, 1);
  const int reps = 200;
  const int calls = 10000;
  const double t = 0.05;
  int failures = 0;
  for (int rep = 0; rep < reps; ++rep) {
    Environment env(inst, substream_seed(5150, rep));
    double sum = 0.0;
    for (int c = 0; c < calls; ++c) sum += env.explore_set(Assortment({1})).count_for(1);
    if (std::abs(sum / calls - 0.5) >= t) ++failures;
  }
  const double bound = 2.0 * std::exp(-calls * t * t / 8.0);
  CHECK(static_cast<double>(failures) / reps < bound);
}
