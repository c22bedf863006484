#include <doctest.h>

#include "crown/planarity.hpp"
#include "crown/star.hpp"
#include "support/testkit.hpp"

using namespace crown;

namespace {

const Rational kEps(1, 10);
const Rational kAlpha = (1 - kEps) / (2 - kEps);

ProfitGraph star_graph(const StarInstance& inst) {
  ProfitGraph g;
  for (const auto& [leaf, p] : inst.profits) g.set_profit(inst.center.id, leaf, p);
  return g;
}

ProfitGraph complete(int n) {
  ProfitGraph g;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.set_profit("v" + std::to_string(i), "v" + std::to_string(j), 1);
  return g;
}

std::set<std::pair<BoxId, BoxId>> forest_edges(const StarForest& f) {
  std::set<std::pair<BoxId, BoxId>> out;
  for (const auto& s : f.stars)
    for (const auto& l : s.leaves) out.insert(std::minmax(s.center, l));
  return out;
}

}  // namespace

TEST_CASE("single leaf gets its full profit") {
  StarInstance inst{{"c", 2, 1, {}}, {{"l", 1, 1, {}}}, {{"l", 3}}};
  auto sol = solve_star_detailed(inst, kEps);
  CHECK(realized_profit(sol.layout, star_graph(inst)) == 3);
}

TEST_CASE("big leaves take the corners") {
  StarInstance inst{{"c", 1, 1, {}}, {}, {}};
  for (int i = 1; i <= 4; ++i) {
    std::string id = "big" + std::to_string(i);
    inst.leaves.push_back({id, 3, 3, {}});
    inst.profits[id] = 1;
  }
  auto sol = solve_star_detailed(inst, kEps);
  CHECK(sol.corners.size() == 4);
  CHECK(realizes(sol.layout, star_graph(inst)));
  CHECK(sol.value == 4);
}

TEST_CASE("corners and sides together realize every edge") {
  StarInstance inst{{"c", 2, 1, {}}, {}, {}};
  for (int i = 1; i <= 4; ++i) inst.leaves.push_back({"q" + std::to_string(i), 5, 5, {}});
  inst.leaves.push_back({"s1", 1, 1, {}});
  inst.leaves.push_back({"s2", 1, 1, {}});
  inst.leaves.push_back({"s3", 2, 2, {}});
  for (const auto& l : inst.leaves) inst.profits[l.id] = 1;
  Layout l = solve_star(inst, kEps);
  CHECK(realized_profit(l, star_graph(inst)) == 7);
}

TEST_CASE("star solver is within alpha of the exhaustive optimum") {
  testkit::Rng rng(21);
  for (int t = 0; t < 120; ++t) {
    auto inst = testkit::random_star(rng, testkit::uniform(rng, 1, 7));
    auto opt = testkit::star_oracle(inst);
    REQUIRE(realized_profit(opt.layout, star_graph(inst)) == opt.value);
    auto sol = solve_star_detailed(inst, kEps);
    validate_layout(sol.layout);
    Rational got = realized_profit(sol.layout, star_graph(inst));
    CHECK(got >= sol.value);
    CHECK(got >= kAlpha * opt.value);
  }
}

TEST_CASE("a path splits into alternating star forests") {
  ProfitGraph path;
  path.set_profit("a", "b", 1);
  path.set_profit("b", "c", 1);
  path.set_profit("c", "d", 1);
  auto parts = partition_tree(path, "a");
  CHECK(forest_edges(parts[0]) == std::set<std::pair<BoxId, BoxId>>{{"a", "b"}, {"c", "d"}});
  CHECK(forest_edges(parts[1]) == std::set<std::pair<BoxId, BoxId>>{{"b", "c"}});
  CHECK_THROWS_AS(partition_tree(complete(3), "v0"), NotATreeError);
}

TEST_CASE("forest decomposition of planar graphs") {
  ProfitGraph k4 = complete(4);
  CHECK(decompose_forests(k4).size() <= 3);
  auto forests = partition_planar(k4);
  CHECK(forests.size() <= 6);
  std::set<std::pair<BoxId, BoxId>> seen;
  std::size_t total = 0;
  for (const auto& f : forests) {
    auto e = forest_edges(f);
    total += e.size();
    seen.insert(e.begin(), e.end());
  }
  CHECK(total == 6);
  CHECK(seen.size() == 6);
  CHECK_THROWS_AS(partition_planar(complete(5)), NotPlanarError);
}

TEST_CASE("planarity") {
  CHECK(is_planar(complete(4)));
  CHECK_FALSE(is_planar(complete(5)));
  CHECK(maximal_planar_subgraph(complete(5)).edge_count() == 9);
  ProfitGraph k33;
  for (const char* a : {"a1", "a2", "a3"})
    for (const char* b : {"b1", "b2", "b3"}) k33.set_profit(a, b, 1);
  CHECK_FALSE(is_planar(k33));
  auto sub = maximal_planar_subgraph(k33);
  CHECK(sub.edge_count() == 8);
  CHECK(is_planar(sub));
}

TEST_CASE("random planar graphs split into at most six star forests") {
  testkit::Rng rng(8);
  for (int t = 0; t < 40; ++t) {
    auto boxes = testkit::random_boxes(rng, 12, 3);
    ProfitGraph g = maximal_planar_subgraph(testkit::random_graph(rng, boxes, 8, 0.6));
    auto forests = partition_planar(g);
    CHECK(forests.size() <= 6);
    std::size_t total = 0;
    for (const auto& f : forests) total += f.edge_count();
    CHECK(total == g.edge_count());
    for (const auto& part : decompose_forests(g)) CHECK(is_forest(part));
  }
}

TEST_CASE("max_crown_stars on trees reaches alpha/2 of the optimum") {
  testkit::Rng rng(13);
  for (int t = 0; t < 25; ++t) {
    auto boxes = testkit::random_boxes(rng, testkit::uniform(rng, 2, 5), 3);
    ProfitGraph tree = testkit::random_tree(rng, boxes, 5);
    Layout l = max_crown_stars(tree, boxes, kEps);
    CHECK(l.size() == boxes.size());
    CHECK(realized_profit(l, tree) >= kAlpha / 2 * testkit::tree_oracle(tree, boxes));
  }
}
