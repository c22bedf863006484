#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crown/geometry.hpp"

namespace crown {

// Plane graph given by a rotation system: rotation[v] lists the neighbours of
// v in counter-clockwise order. The outer face is the quadrangle
// north, east, south, west (clockwise).
struct TriangulationInstance {
  std::vector<BoxSpec> boxes;
  std::map<BoxId, std::vector<BoxId>> rotation;
  BoxId north, east, south, west;

  ProfitGraph graph() const;  // unit profits
  bool is_outer(const BoxId& v) const { return v == north || v == east || v == south || v == west; }
};

struct TriangulationViolation {
  std::string condition;  // boxes, rotation, planarity, outer-face, triangulated, separating-triangle
  std::vector<BoxId> witness;
  std::string message;
};

std::optional<TriangulationViolation> validate_instance(const TriangulationInstance& inst);

// Faces of the rotation system; the dart u->v is followed by v->w where w
// precedes u in the rotation at v.
std::vector<std::vector<BoxId>> trace_faces(const std::map<BoxId, std::vector<BoxId>>& rotation);

struct TriangulationFailure {
  std::string stage;  // invalid, stuck, not-rectangle, outer-too-small, outer-contact
  std::string message;
  std::vector<BoxId> witness;
};

// Touching along a segment of positive length.
bool touches_along_segment(const PlacedBox& a, const PlacedBox& b);

// Staircase greedy: inner boxes are seated one at a time with their lower-left
// corner on a concavity of the region grown from the west and south rays,
// then the four outer boxes are wrapped around the resulting rectangle.
// Supporting-graph edges are realized as contacts of positive length.
std::variant<Layout, TriangulationFailure> realize_triangulation(const TriangulationInstance& inst);

}  // namespace crown
