#include <doctest.h>

#include "crown/hier.hpp"
#include "support/testkit.hpp"

using namespace crown;

namespace {

struct Builder {
  EmbeddedDag dag;
  std::vector<BoxSpec> boxes;

  Builder& box(const BoxId& id, Rational w, Rational h, std::vector<BoxId> rotation) {
    dag.vertices.push_back(id);
    dag.rotation[id] = std::move(rotation);
    boxes.push_back({id, std::move(w), std::move(h), {}});
    return *this;
  }
  Builder& edge(const BoxId& child, const BoxId& parent) {
    dag.edges.emplace_back(child, parent);
    return *this;
  }
  std::map<BoxId, Rational> heights() const {
    std::map<BoxId, Rational> out;
    for (const auto& b : boxes) out[b.id] = b.height;
    return out;
  }
  std::map<BoxId, Rational> widths() const {
    std::map<BoxId, Rational> out;
    for (const auto& b : boxes) out[b.id] = b.width;
    return out;
  }
};

Builder single_edge() { return Builder().box("s", 1, 1, {"c"}).box("c", 1, 2, {"s"}).edge("c", "s"); }

Builder siblings() {
  return Builder()
      .box("s", 4, 1, {"p", "q"})
      .box("p", 1, 1, {"s"})
      .box("q", 1, 1, {"s"})
      .edge("p", "s")
      .edge("q", "s");
}

Builder diamond(Rational hb, Rational hc) {
  return Builder()
      .box("d", 4, 1, {"b", "c"})
      .box("b", 2, std::move(hb), {"d", "a"})
      .box("c", 2, std::move(hc), {"d", "a"})
      .box("a", 4, 1, {"c", "b"})
      .edge("b", "d")
      .edge("c", "d")
      .edge("a", "b")
      .edge("a", "c");
}

void check_hierarchy(const Layout& l, const EmbeddedDag& dag, const Rational& delta) {
  for (const auto& [child, parent] : dag.edges) {
    const auto& c = l.at(child);
    const auto& p = l.at(parent);
    CHECK(c.top() == p.bottom());
    CHECK(std::min(c.right(), p.right()) - std::max(c.left(), p.left()) >= delta);
  }
}

}  // namespace

TEST_CASE("embedding validation") {
  CHECK_FALSE(validate_embedding(single_edge().dag));

  Builder two_sinks = Builder().box("a", 1, 1, {}).box("b", 1, 1, {});
  auto v = validate_embedding(two_sinks.dag);
  REQUIRE(v);
  CHECK(v->kind == "sink");

  Builder mixed = Builder()
                      .box("s", 1, 1, {"x", "y"})
                      .box("t", 1, 1, {"x", "y"})
                      .box("x", 1, 1, {"s", "u", "t", "w"})
                      .box("u", 1, 1, {"x"})
                      .box("w", 1, 1, {"x"})
                      .box("y", 1, 1, {"s", "t"})
                      .box("r", 1, 1, {"s", "t"})
                      .edge("x", "s")
                      .edge("x", "t")
                      .edge("u", "x")
                      .edge("w", "x")
                      .edge("s", "r")
                      .edge("t", "r")
                      .edge("y", "s")
                      .edge("y", "t");
  mixed.dag.rotation["r"] = {"s", "t"};
  mixed.dag.rotation["s"] = {"r", "x", "y"};
  mixed.dag.rotation["t"] = {"r", "y", "x"};
  v = validate_embedding(mixed.dag);
  REQUIRE(v);
  CHECK(v->kind == "bimodal");
  CHECK(v->vertex == "x");

  Builder cyclic = Builder().box("a", 1, 1, {"b"}).box("b", 1, 1, {"a"}).edge("a", "b").edge("b", "a");
  REQUIRE(validate_embedding(cyclic.dag));
}

TEST_CASE("y assignment propagates down from the sink") {
  auto b = single_edge();
  auto y = std::get<std::map<BoxId, VerticalSpan>>(assign_y(b.dag, b.heights()));
  CHECK(y.at("s").top == 0);
  CHECK(y.at("s").bottom == -1);
  CHECK(y.at("c").top == -1);
  CHECK(y.at("c").bottom == -3);

  Builder chain =
      Builder().box("a", 1, 1, {"b"}).box("b", 1, 1, {"c", "a"}).box("c", 1, 1, {"b"}).edge("a", "b").edge("b", "c");
  auto yc = std::get<std::map<BoxId, VerticalSpan>>(assign_y(chain.dag, chain.heights()));
  CHECK(yc.at("c").top == 0);
  CHECK(yc.at("b").top == -1);
  CHECK(yc.at("a").top == -2);
}

TEST_CASE("unequal diamond sides conflict") {
  auto b = diamond(1, 2);
  auto r = assign_y(b.dag, b.heights());
  REQUIRE(std::holds_alternative<YConflict>(r));
  CHECK(std::get<YConflict>(r).box == "a");
  auto h = solve_hier(b.dag, b.boxes);
  REQUIRE(std::holds_alternative<HierFailure>(h));
  CHECK(std::get<HierFailure>(h).stage == "assign_y");
}

TEST_CASE("sweep orders siblings by rotation") {
  auto one = single_edge();
  auto y1 = std::get<std::map<BoxId, VerticalSpan>>(assign_y(one.dag, one.heights()));
  CHECK(std::get<std::vector<OrderingConstraint>>(sweep_order(one.dag, y1)).empty());

  auto f = siblings();
  auto y = std::get<std::map<BoxId, VerticalSpan>>(assign_y(f.dag, f.heights()));
  auto order = std::get<std::vector<OrderingConstraint>>(sweep_order(f.dag, y));
  REQUIRE(order.size() == 1);
  CHECK(order[0].left == "p");
  CHECK(order[0].right == "q");

  auto d = diamond(1, 1);
  auto yd = std::get<std::map<BoxId, VerticalSpan>>(assign_y(d.dag, d.heights()));
  auto od = std::get<std::vector<OrderingConstraint>>(sweep_order(d.dag, yd));
  REQUIRE_FALSE(od.empty());
  CHECK(od[0].left == "b");
  CHECK(od[0].right == "c");
}

TEST_CASE("x solve") {
  auto one = single_edge();
  auto x = std::get<std::map<BoxId, Rational>>(solve_x(one.widths(), one.dag.edges, {}, Rational(1, 4), "s"));
  CHECK(x.at("s") == 0);
  CHECK(std::min(x.at("s"), x.at("c")) + 1 - std::max(x.at("s"), x.at("c")) >= Rational(1, 4));

  auto f = siblings();
  auto widths = f.widths();
  widths["s"] = 1;
  auto r = solve_x(widths, f.dag.edges, {{"p", "q"}}, Rational(3, 4), "s");
  REQUIRE(std::holds_alternative<XInfeasible>(r));
  CHECK_FALSE(std::get<XInfeasible>(r).witness.empty());
}

TEST_CASE("three-level containment is realized") {
  Builder b = Builder()
                  .box("S", 6, 1, {"A", "B"})
                  .box("A", 2, 1, {"S", "C"})
                  .box("B", 3, 1, {"S"})
                  .box("C", 1, 1, {"A"})
                  .edge("A", "S")
                  .edge("B", "S")
                  .edge("C", "A");
  auto r = solve_hier(b.dag, b.boxes, Rational(1, 2));
  REQUIRE(std::holds_alternative<Layout>(r));
  const Layout& l = std::get<Layout>(r);
  validate_layout(l);
  check_hierarchy(l, b.dag, Rational(1, 2));
  CHECK(l.at("A").right() <= l.at("B").left());
}

TEST_CASE("solver agrees with exhaustive placement") {
  testkit::Rng rng(23);
  for (int t = 0; t < 300; ++t) {
    auto inst = testkit::random_hier(rng, testkit::uniform(rng, 2, 5), 3);
    bool expect = testkit::hier_oracle(inst, 1);
    auto r = solve_hier(inst.dag, inst.boxes, Rational(1));
    REQUIRE(std::holds_alternative<Layout>(r) == expect);
    if (expect) {
      validate_layout(std::get<Layout>(r));
      check_hierarchy(std::get<Layout>(r), inst.dag, 1);
    }
  }
}
