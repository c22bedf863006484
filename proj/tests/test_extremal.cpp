#include <doctest.h>

#include "crown/extremal.hpp"
#include "support/testkit.hpp"

using namespace crown;

TEST_CASE("extremal arrangement reaches 2n - 2 contacts") {
  testkit::Rng rng(37);
  for (std::size_t n : {2, 3, 4, 5, 6, 9, 12, 20}) {
    for (int t = 0; t < 10; ++t) {
      auto boxes = testkit::random_boxes(rng, n, 9, 3);
      Layout l = place_extremal(boxes);
      validate_layout(l);
      CHECK(l.size() == n);
      CHECK(detect_contacts(l).size() == std::min(2 * n - 2, n * (n - 1) / 2));
    }
  }
}

TEST_CASE("too few boxes") {
  CHECK_THROWS_AS(place_extremal({{"a", 1, 1, {}}}), TooFewBoxesError);
}

TEST_CASE("power squares") {
  auto s = gen_power_squares(3);
  REQUIRE(s.size() == 3);
  CHECK(s[0].width == 2);
  CHECK(s[1].width == 4);
  CHECK(s[2].height == 8);
  CHECK(gen_power_squares(1).size() == 1);
  for (int n = 4; n <= 10; ++n) {
    Layout l = place_extremal(gen_power_squares(n));
    CHECK(detect_contacts(l).size() == static_cast<std::size_t>(2 * n - 2));
    CHECK(testkit::orientation_classes_are_forests(l));
  }
}

TEST_CASE("partition star gadget") {
  auto g = gen_partition_star_instance({1, 1, 2}, std::vector<std::size_t>{2});
  REQUIRE(g.witness);
  CHECK(realizes(*g.witness, g.graph));
  CHECK(g.boxes.size() == 8);
  const auto& center = g.boxes.front();
  CHECK(center.width == 2);
  CHECK(center.height == Rational(1, 2));

  auto pair = gen_partition_star_instance({1, 1});
  REQUIRE(pair.witness);
  CHECK(realizes(*pair.witness, pair.graph));

  CHECK_FALSE(gen_partition_star_instance({3, 3, 2}).witness);
  CHECK_THROWS_AS(gen_partition_star_instance({1, 2}), InvalidInstanceError);
  CHECK_THROWS_AS(gen_partition_star_instance({1, 1, 2}, std::vector<std::size_t>{0}), InvalidInstanceError);
}

TEST_CASE("random balanced partitions give realizing witnesses") {
  testkit::Rng rng(41);
  for (int t = 0; t < 40; ++t) {
    auto pc = testkit::random_partition(rng);
    auto g = gen_partition_star_instance(pc.values, pc.top);
    REQUIRE(g.witness);
    CHECK(realizes(*g.witness, g.graph));
  }
}

TEST_CASE("3-partition tree gadget") {
  std::vector<long> s{6, 7, 7, 6, 7, 7};
  auto g = gen_3partition_tree_instance(s, 2, 20, std::vector<std::vector<std::size_t>>{{0, 1, 2}, {3, 4, 5}});
  REQUIRE(g.witness);
  CHECK(realizes(*g.witness, g.graph));
  CHECK(g.boxes.size() == 26);
  CHECK(g.graph.edge_count() == g.boxes.size() - 1);

  Rational k = g.witness->at("c").spec.width;
  Rational along = 0;
  for (const auto& [id, pb] : *g.witness) {
    if (pb.top() == 0 && pb.spec.height == 20) along += pb.spec.width;
  }
  CHECK(along == k);

  CHECK(gen_3partition_tree_instance(s, 2, 20).witness);
  CHECK_THROWS_AS(gen_3partition_tree_instance({10, 5, 5}, 1, 20), InvalidInstanceError);
  CHECK_THROWS_AS(gen_3partition_tree_instance({6, 7, 7}, 2, 20), InvalidInstanceError);
}

TEST_CASE("random 3-partition witnesses") {
  testkit::Rng rng(43);
  for (int t = 0; t < 20; ++t) {
    auto tc = testkit::random_three_partition(rng);
    auto g = gen_3partition_tree_instance(tc.values, tc.m, tc.bound, tc.groups);
    REQUIRE(g.witness);
    CHECK(realizes(*g.witness, g.graph));
  }
}
