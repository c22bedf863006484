#include <doctest.h>

#include "crown/gap.hpp"
#include "support/testkit.hpp"

using namespace crown;

namespace {

Rational subset_optimum(const std::vector<KnapsackItem>& items, const Rational& capacity) {
  Rational best = 0;
  for (unsigned mask = 0; mask < (1u << items.size()); ++mask) {
    Rational size = 0, value = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (mask >> i & 1) {
        size += items[i].size;
        value += items[i].value;
      }
    }
    if (size <= capacity && value > best) best = value;
  }
  return best;
}

Rational assignment_optimum(const GapInstance& inst) {
  std::size_t n = inst.items.size(), m = inst.bins.size();
  std::vector<std::size_t> choice(n, 0);
  Rational best = 0;
  while (true) {
    std::vector<Rational> load(m, 0);
    Rational value = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (choice[i] == 0) continue;
      std::size_t b = choice[i] - 1;
      load[b] += inst.items[i].sizes[b];
      value += inst.items[i].values[b];
      ok = load[b] <= inst.bins[b].capacity;
    }
    if (ok && value > best) best = value;
    std::size_t i = 0;
    while (i < n && ++choice[i] > m) choice[i++] = 0;
    if (i == n) break;
  }
  return best;
}

Rational chosen_value(const std::vector<KnapsackItem>& items, const std::vector<std::size_t>& chosen) {
  Rational v = 0;
  for (auto i : chosen) v += items[i].value;
  return v;
}

GapInstance random_gap(testkit::Rng& rng, std::size_t n, std::size_t m) {
  GapInstance inst;
  for (std::size_t b = 0; b < m; ++b) inst.bins.push_back({"b" + std::to_string(b), testkit::uniform(rng, 2, 8)});
  for (std::size_t i = 0; i < n; ++i) {
    GapItem it{"i" + std::to_string(i), {}, {}};
    for (std::size_t b = 0; b < m; ++b) {
      it.sizes.push_back(testkit::random_rational(rng, 6, 2));
      it.values.push_back(testkit::random_rational(rng, 9, 3));
    }
    inst.items.push_back(std::move(it));
  }
  return inst;
}

}  // namespace

TEST_CASE("knapsack picks the best feasible pair") {
  std::vector<KnapsackItem> items{{2, 3}, {2, 3}, {3, 5}};
  auto chosen = knapsack_fptas(items, 4, Rational(1, 10));
  CHECK(chosen_value(items, chosen) == 6);
}

TEST_CASE("zero capacity keeps only zero-size items") {
  std::vector<KnapsackItem> items{{0, 2}, {1, 5}, {0, 1}};
  auto chosen = knapsack_fptas(items, 0, Rational(1, 2));
  CHECK(chosen_value(items, chosen) == 3);
}

TEST_CASE("knapsack rejects bad parameters") {
  std::vector<KnapsackItem> items{{1, 1}};
  CHECK_THROWS_AS(knapsack_fptas(items, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(knapsack_fptas(items, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(knapsack_fptas(items, -1, Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("knapsack is within 1 - eps of the subset optimum") {
  testkit::Rng rng(3);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = testkit::uniform(rng, 1, 10);
    std::vector<KnapsackItem> items;
    for (std::size_t i = 0; i < n; ++i) {
      items.push_back({testkit::random_rational(rng, 8, 3), testkit::random_rational(rng, 20, 4)});
    }
    Rational cap = testkit::random_rational(rng, 12, 2);
    Rational eps(testkit::uniform(rng, 1, 5), 10);
    auto chosen = knapsack_fptas(items, cap, eps);
    Rational size = 0;
    for (auto i : chosen) size += items[i].size;
    CHECK(size <= cap);
    CHECK(chosen_value(items, chosen) >= (1 - eps) * subset_optimum(items, cap));
  }
}

TEST_CASE("two bins, two items") {
  GapInstance inst;
  inst.bins = {{"b1", 2}, {"b2", 2}};
  inst.items = {{"A", {2, 2}, {5, 1}}, {"B", {2, 2}, {4, 4}}};
  auto seq = gap_sequential(inst, Rational(1, 10));
  CHECK(seq.feasible(inst));
  CHECK(seq.value(inst) == 9);
  CHECK(gap_exact(inst).value(inst) == 9);
}

TEST_CASE("gap_exact refuses large instances") {
  testkit::Rng rng(5);
  CHECK_THROWS_AS(gap_exact(random_gap(rng, 13, 2)), TooLargeError);
  CHECK_THROWS_AS(gap_exact(random_gap(rng, 3, 5)), TooLargeError);
}

TEST_CASE("gap validation") {
  GapInstance inst;
  inst.bins = {{"b", 0}};
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
  inst.bins = {{"b", 1}};
  inst.items = {{"i", {1, 1}, {1}}};
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
}

TEST_CASE("gap_exact matches enumeration and sequential is within alpha") {
  testkit::Rng rng(7);
  for (int t = 0; t < 150; ++t) {
    auto inst = random_gap(rng, testkit::uniform(rng, 1, 6), testkit::uniform(rng, 1, 3));
    Rational eps(testkit::uniform(rng, 1, 5), 10);
    Rational best = assignment_optimum(inst);
    auto exact = gap_exact(inst);
    CHECK(exact.feasible(inst));
    CHECK(exact.value(inst) == best);
    auto seq = gap_sequential(inst, eps);
    CHECK(seq.feasible(inst));
    CHECK(seq.value(inst) >= (1 - eps) / (2 - eps) * best);
  }
}
