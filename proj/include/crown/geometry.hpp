#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crown/rational.hpp"

namespace crown {

using BoxId = std::string;

// An input rectangle of fixed size. `label` is the display text (defaults to
// the id when empty).
struct BoxSpec {
  BoxId id;
  Rational width;
  Rational height;
  std::string label;

  const std::string& display() const { return label.empty() ? id : label; }
};

// Throws std::invalid_argument for non-positive dimensions or duplicate ids.
void validate_boxes(const std::vector<BoxSpec>& boxes);

struct BoundingBox {
  Rational x0, y0, x1, y1;
  Rational width() const { return x1 - x0; }
  Rational height() const { return y1 - y0; }
};

struct PlacedBox {
  BoxSpec spec;
  Rational x;  // lower-left corner
  Rational y;

  Rational left() const { return x; }
  Rational right() const { return x + spec.width; }
  Rational bottom() const { return y; }
  Rational top() const { return y + spec.height; }
  BoundingBox bounds() const { return {left(), bottom(), right(), top()}; }
};

class CrownError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OverlapError : public CrownError {
 public:
  OverlapError(BoxId a, BoxId b);
  const BoxId& first() const { return a_; }
  const BoxId& second() const { return b_; }

 private:
  BoxId a_, b_;
};

class MissingBoxError : public CrownError {
 public:
  explicit MissingBoxError(BoxId id);
  const BoxId& id() const { return id_; }

 private:
  BoxId id_;
};

class DuplicateIdError : public CrownError {
 public:
  explicit DuplicateIdError(BoxId id);
  const BoxId& id() const { return id_; }

 private:
  BoxId id_;
};

// Placement map box-id -> lower-left corner. Iteration order is by id.
class Layout {
 public:
  using Map = std::map<BoxId, PlacedBox>;

  // Throws DuplicateIdError if the id is already placed.
  void place(const BoxSpec& box, Rational x, Rational y);
  void move(const BoxId& id, Rational x, Rational y);

  bool contains(const BoxId& id) const { return boxes_.count(id) != 0; }
  const PlacedBox& at(const BoxId& id) const;
  std::size_t size() const { return boxes_.size(); }
  bool empty() const { return boxes_.empty(); }

  Map::const_iterator begin() const { return boxes_.begin(); }
  Map::const_iterator end() const { return boxes_.end(); }

  void translate(const Rational& dx, const Rational& dy);
  // Empty layouts have no bounding box.
  std::optional<BoundingBox> bounding_box() const;

  friend bool operator==(const Layout& a, const Layout& b);

 private:
  Map boxes_;
};

enum class Orientation { Horizontal, Vertical };

// A touching pair. Horizontal contacts are side by side (the shared segment is
// vertical, at x == fixed); vertical contacts are one box above the other
// (shared segment horizontal, at y == fixed). [lo, hi] is the extent of the
// segment along the other axis; lo == hi for point contacts.
struct Contact {
  BoxId a;  // a < b
  BoxId b;
  Orientation orientation;
  bool degenerate;
  Rational fixed;
  Rational lo;
  Rational hi;
};

struct Edge {
  BoxId a;  // a < b
  BoxId b;
  Rational profit;
};

// Symmetric non-negative edge profits over box ids.
class ProfitGraph {
 public:
  void add_vertex(const BoxId& v);
  // Adds or overwrites the profit of {a, b}; both endpoints become vertices.
  // Throws std::invalid_argument for self loops or negative profits.
  void set_profit(const BoxId& a, const BoxId& b, const Rational& profit);
  void remove_edge(const BoxId& a, const BoxId& b);

  bool has_vertex(const BoxId& v) const { return vertices_.count(v) != 0; }
  bool has_edge(const BoxId& a, const BoxId& b) const;
  // Zero for non-edges.
  Rational profit(const BoxId& a, const BoxId& b) const;

  const std::set<BoxId>& vertices() const { return vertices_; }
  std::vector<Edge> edges() const;  // sorted by (a, b)
  std::size_t edge_count() const { return edges_.size(); }
  std::vector<BoxId> neighbors(const BoxId& v) const;  // sorted
  std::size_t degree(const BoxId& v) const;
  std::size_t max_degree() const;
  Rational total_profit() const;

  // Subgraph on the same vertex set containing only the given edges.
  ProfitGraph with_edges(const std::vector<Edge>& edges) const;

 private:
  static std::pair<BoxId, BoxId> key(const BoxId& a, const BoxId& b);

  std::set<BoxId> vertices_;
  std::map<std::pair<BoxId, BoxId>, Rational> edges_;
  std::map<BoxId, std::set<BoxId>> adjacency_;
};

// Throws OverlapError naming the first pair (in id order) whose interiors meet.
void validate_layout(const Layout& layout);

// All touching pairs, sorted by id pair. Throws OverlapError.
std::vector<Contact> detect_contacts(const Layout& layout);

// Sum of profits over touching pairs that are graph edges.
Rational realized_profit(const Layout& layout, const ProfitGraph& graph);
Rational realized_profit(const std::vector<Contact>& contacts, const ProfitGraph& graph);

// True iff every graph edge is a touching pair. Throws MissingBoxError when a
// graph vertex is not placed.
bool realizes(const Layout& layout, const ProfitGraph& graph);

// Rigidly translates each component into a left-to-right row, separated by
// `gap`, with every component's bounding box starting at y = 0.
Layout pack_components(const std::vector<Layout>& components, const Rational& gap = 1);

// Places `boxes` in a row below `layout` (separated by `gap`), so that none of
// them touches anything. Used for boxes an algorithm leaves unplaced.
void append_discard_row(Layout& layout, const std::vector<BoxSpec>& boxes, const Rational& gap = 1);

}  // namespace crown
