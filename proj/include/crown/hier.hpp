#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "crown/geometry.hpp"

namespace crown {

// Directed edges point from a box to the box resting on it (child -> parent),
// towards the unique sink. `rotation[v]` lists the neighbours of v in
// counter-clockwise order: successors (above) right to left, then
// predecessors (below) left to right. For the sink the list is read as its
// predecessors from left to right.
struct EmbeddedDag {
  std::vector<BoxId> vertices;
  std::vector<std::pair<BoxId, BoxId>> edges;
  std::map<BoxId, std::vector<BoxId>> rotation;

  std::vector<BoxId> successors(const BoxId& v) const;    // sorted
  std::vector<BoxId> predecessors(const BoxId& v) const;  // sorted
};

struct EmbeddingViolation {
  std::string kind;  // unknown-vertex, duplicate-edge, self-loop, rotation, cycle, sink, unreachable, bimodal
  BoxId vertex;
  std::string message;
};

std::optional<EmbeddingViolation> validate_embedding(const EmbeddedDag& dag);

// Only meaningful after validate_embedding succeeds.
BoxId find_sink(const EmbeddedDag& dag);
std::vector<BoxId> predecessors_left_to_right(const EmbeddedDag& dag, const BoxId& v);
std::vector<BoxId> successors_left_to_right(const EmbeddedDag& dag, const BoxId& v);

struct VerticalSpan {
  Rational top;
  Rational bottom;
};

struct YConflict {
  BoxId box;
  Rational first;
  Rational second;
};

// t_sink = 0 and t_i = b_j along every edge (i, j), propagated downwards from
// the sink; b_i = t_i - h_i.
std::variant<std::map<BoxId, VerticalSpan>, YConflict> assign_y(const EmbeddedDag& dag,
                                                                 const std::map<BoxId, Rational>& heights);

// r_left <= l_right
struct OrderingConstraint {
  BoxId left;
  BoxId right;
  friend bool operator<(const OrderingConstraint& a, const OrderingConstraint& b) {
    return std::tie(a.left, a.right) < std::tie(b.left, b.right);
  }
  friend bool operator==(const OrderingConstraint& a, const OrderingConstraint& b) {
    return a.left == b.left && a.right == b.right;
  }
};

struct SweepFailure {
  BoxId box;
  std::string message;
};

// Top-down sweep: the left-to-right list of boxes cut by the sweep line
// starts as [sink]; at each bottom (largest first) every box ending there is
// replaced by its predecessors. Emits every consecutive pair ever listed.
std::variant<std::vector<OrderingConstraint>, SweepFailure> sweep_order(const EmbeddedDag& dag,
                                                                        const std::map<BoxId, VerticalSpan>& y);

// x_to - x_from <= bound
struct DifferenceConstraint {
  BoxId from;
  BoxId to;
  Rational bound;
  std::string reason;
};

struct XInfeasible {
  std::vector<DifferenceConstraint> witness;  // a negative cycle, or the offending width
};

// Left coordinates from shortest paths over the difference constraints
// l_j - l_i <= w_i - delta, l_i - l_j <= w_j - delta (each edge) and
// l_a - l_b <= -w_a (each ordering), shifted so that l_anchor = 0.
std::variant<std::map<BoxId, Rational>, XInfeasible> solve_x(const std::map<BoxId, Rational>& widths,
                                                             const std::vector<std::pair<BoxId, BoxId>>& edges,
                                                             const std::vector<OrderingConstraint>& order,
                                                             const Rational& delta, const BoxId& anchor);

struct HierFailure {
  std::string stage;  // embedding, assign_y, sweep_order, solve_x
  std::string message;
  std::vector<std::string> witness;
};

using HierResult = std::variant<Layout, HierFailure>;

// Default delta: min width / 1000.
HierResult solve_hier(const EmbeddedDag& dag, const std::vector<BoxSpec>& boxes,
                      const std::optional<Rational>& delta = std::nullopt);

}  // namespace crown
