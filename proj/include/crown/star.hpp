#pragma once

#include <array>
#include <map>
#include <vector>

#include "crown/geometry.hpp"
#include "crown/rational.hpp"

namespace crown {

struct StarInstance {
  BoxSpec center;
  std::vector<BoxSpec> leaves;
  std::map<BoxId, Rational> profits;  // leaf id -> profit of the edge to the center

  // Throws std::invalid_argument when ids repeat, a profit is missing or
  // negative, or a box has a non-positive side.
  void validate() const;
  Rational total_profit() const;
};

struct Star {
  BoxId center;
  std::vector<BoxId> leaves;
};

// Vertex-disjoint stars.
struct StarForest {
  std::vector<Star> stars;

  std::size_t edge_count() const;
};

class NotATreeError : public CrownError {
 public:
  using CrownError::CrownError;
};

// Stars with more leaves than this only try corner sets drawn from their
// kStarCornerPool most profitable leaves.
inline constexpr std::size_t kStarFullCornerSearch = 10;
inline constexpr std::size_t kStarCornerPool = 8;

struct StarSolution {
  Layout layout;
  std::vector<BoxId> corners;  // in NE, NW, SW, SE order
  Rational value;              // corner profits plus the GAP value
};

// Center at [0, w0] x [0, h0]. Up to four leaves touch its corners by a single
// point; the rest are distributed over the four sides by gap_sequential with
// bins top, bottom, left, right. Unassigned leaves go to a discard row.
StarSolution solve_star_detailed(const StarInstance& inst, const Rational& eps);
Layout solve_star(const StarInstance& inst, const Rational& eps);

// Splits a tree into two star forests: edge (parent u, child v) goes to
// forest depth(u) mod 2. Throws NotATreeError.
std::array<StarForest, 2> partition_tree(const ProfitGraph& tree, const BoxId& root);

// Same split applied to every component of a forest, each rooted at its
// smallest id. Throws NotATreeError if the graph has a cycle.
std::array<StarForest, 2> partition_forest(const ProfitGraph& forest);

// Splits the edges of a planar graph into at most three forests.
// Throws NotPlanarError when the graph is not planar.
std::vector<ProfitGraph> decompose_forests(const ProfitGraph& graph);

// At most six non-empty star forests partitioning the edges of a planar
// graph. Throws NotPlanarError.
std::vector<StarForest> partition_planar(const ProfitGraph& graph);

// One solve_star per star, plus every other box as a singleton, combined with
// pack_components. `boxes` must contain every id the forest mentions.
Layout solve_star_forest(const StarForest& forest, const std::vector<BoxSpec>& boxes, const ProfitGraph& graph,
                         const Rational& eps);

// Best star-forest layout over a star-forest partition of the graph: two
// forests for forests, at most six for planar graphs. Throws NotPlanarError
// for non-planar graphs.
Layout max_crown_stars(const ProfitGraph& graph, const std::vector<BoxSpec>& boxes, const Rational& eps);

bool is_forest(const ProfitGraph& graph);

}  // namespace crown
