#include "crown/triangulation.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>
#include <stdexcept>

namespace crown {
namespace {

// Region grown from the rays: columns [x_{i-1}, x_i] x [0, h_i] starting at
// x = 0 with strictly decreasing heights.
class Staircase {
 public:
  struct Column {
    Rational x_end;
    Rational height;
  };

  const std::vector<Column>& columns() const { return columns_; }
  Rational width() const { return columns_.empty() ? Rational(0) : columns_.back().x_end; }

  // Concave corners, left to right.
  std::vector<std::pair<Rational, Rational>> concavities() const {
    std::vector<std::pair<Rational, Rational>> out;
    Rational x = 0;
    for (const auto& c : columns_) {
      out.emplace_back(x, c.height);
      x = c.x_end;
    }
    out.emplace_back(x, 0);
    return out;
  }

  // Height of the column ending at x (x > 0).
  Rational height_left_of(const Rational& x) const {
    for (const auto& c : columns_) {
      if (c.x_end == x) return c.height;
    }
    throw std::logic_error("no column ends at the concavity");
  }

  // Right end of the region just below height y (y > 0).
  Rational extent_below(const Rational& y) const {
    Rational end = 0;
    for (const auto& c : columns_) {
      if (c.height >= y) end = c.x_end;
    }
    return end;
  }

  void raise(const Rational& x0, const Rational& x1, const Rational& height) {
    std::vector<std::array<Rational, 3>> pieces;  // start, end, height
    Rational x = 0;
    for (const auto& c : columns_) {
      pieces.push_back({x, c.x_end, c.height});
      x = c.x_end;
    }
    if (x1 > x) pieces.push_back({x, x1, Rational(0)});

    std::vector<std::array<Rational, 3>> split;
    for (const auto& p : pieces) {
      std::vector<Rational> cuts{p[0]};
      for (const auto& c : {x0, x1}) {
        if (c > p[0] && c < p[1]) cuts.push_back(c);
      }
      cuts.push_back(p[1]);
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        bool inside = cuts[i] >= x0 && cuts[i + 1] <= x1;
        split.push_back({cuts[i], cuts[i + 1], inside ? height : p[2]});
      }
    }
    columns_.clear();
    for (const auto& p : split) {
      if (p[2] == 0) continue;
      if (!columns_.empty() && columns_.back().height == p[2]) {
        columns_.back().x_end = p[1];
      } else {
        columns_.push_back({p[1], p[2]});
      }
    }
  }

  Rational area() const {
    Rational sum = 0;
    Rational x = 0;
    for (const auto& c : columns_) {
      sum += (c.x_end - x) * c.height;
      x = c.x_end;
    }
    return sum;
  }

  bool monotone() const {
    for (std::size_t i = 1; i < columns_.size(); ++i) {
      if (!(columns_[i].height < columns_[i - 1].height)) return false;
    }
    return true;
  }

 private:
  std::vector<Column> columns_;
};

std::string join(const std::vector<BoxId>& ids) {
  std::string out;
  for (const auto& id : ids) out += (out.empty() ? "" : ", ") + id;
  return out;
}

}  // namespace

ProfitGraph TriangulationInstance::graph() const {
  ProfitGraph g;
  for (const auto& b : boxes) g.add_vertex(b.id);
  for (const auto& [v, list] : rotation) {
    for (const auto& w : list) g.set_profit(v, w, 1);
  }
  return g;
}

bool touches_along_segment(const PlacedBox& a, const PlacedBox& b) {
  Rational ox = std::min(a.right(), b.right()) - std::max(a.left(), b.left());
  Rational oy = std::min(a.top(), b.top()) - std::max(a.bottom(), b.bottom());
  return (ox == 0 && oy > 0) || (oy == 0 && ox > 0);
}

std::vector<std::vector<BoxId>> trace_faces(const std::map<BoxId, std::vector<BoxId>>& rotation) {
  std::set<std::pair<BoxId, BoxId>> used;
  std::vector<std::vector<BoxId>> faces;
  auto before = [&](const BoxId& v, const BoxId& u) {
    const auto& list = rotation.at(v);
    auto it = std::find(list.begin(), list.end(), u);
    if (it == list.end()) throw std::invalid_argument("rotation is not symmetric at '" + v + "'");
    return it == list.begin() ? list.back() : *(it - 1);
  };
  for (const auto& [u, list] : rotation) {
    for (const auto& v : list) {
      if (used.count({u, v})) continue;
      std::vector<BoxId> face;
      BoxId a = u, b = v;
      while (!used.count({a, b})) {
        used.insert({a, b});
        face.push_back(a);
        BoxId c = before(b, a);
        a = b;
        b = c;
      }
      faces.push_back(face);
    }
  }
  return faces;
}

std::optional<TriangulationViolation> validate_instance(const TriangulationInstance& inst) {
  try {
    validate_boxes(inst.boxes);
  } catch (const std::exception& e) {
    return TriangulationViolation{"boxes", {}, e.what()};
  }
  std::set<BoxId> ids;
  for (const auto& b : inst.boxes) ids.insert(b.id);
  std::set<BoxId> outer{inst.north, inst.east, inst.south, inst.west};
  if (outer.size() != 4) return TriangulationViolation{"outer-face", {}, "outer vertices must be distinct"};
  for (const auto& v : outer) {
    if (!ids.count(v)) return TriangulationViolation{"boxes", {v}, "outer vertex '" + v + "' has no box"};
  }
  for (const auto& [v, list] : inst.rotation) {
    if (!ids.count(v)) return TriangulationViolation{"boxes", {v}, "rotation vertex '" + v + "' has no box"};
  }
  for (const auto& v : ids) {
    auto it = inst.rotation.find(v);
    if (it == inst.rotation.end() || it->second.empty()) {
      return TriangulationViolation{"rotation", {v}, "vertex '" + v + "' has no neighbours"};
    }
    std::set<BoxId> seen;
    for (const auto& w : it->second) {
      if (w == v || !ids.count(w) || !seen.insert(w).second) {
        return TriangulationViolation{"rotation", {v, w}, "bad neighbour '" + w + "' in the rotation at '" + v + "'"};
      }
      const auto& back = inst.rotation.count(w) ? inst.rotation.at(w) : std::vector<BoxId>{};
      if (std::find(back.begin(), back.end(), v) == back.end()) {
        return TriangulationViolation{"rotation", {v, w}, "adjacency " + v + "-" + w + " is not symmetric"};
      }
    }
  }

  // Connected and Euler's formula.
  std::set<BoxId> reached{*ids.begin()};
  std::deque<BoxId> queue{*ids.begin()};
  while (!queue.empty()) {
    BoxId v = queue.front();
    queue.pop_front();
    for (const auto& w : inst.rotation.at(v)) {
      if (reached.insert(w).second) queue.push_back(w);
    }
  }
  if (reached.size() != ids.size()) return TriangulationViolation{"planarity", {}, "graph is not connected"};

  auto faces = trace_faces(inst.rotation);
  std::size_t darts = 0;
  for (const auto& [v, list] : inst.rotation) darts += list.size();
  const long V = static_cast<long>(ids.size());
  const long E = static_cast<long>(darts / 2);
  const long F = static_cast<long>(faces.size());
  if (V - E + F != 2) {
    return TriangulationViolation{"planarity", {}, "rotation system is not a plane embedding (V - E + F != 2)"};
  }

  const std::vector<BoxId> want{inst.north, inst.east, inst.south, inst.west};
  std::optional<std::size_t> outer_face;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& face = faces[f];
    if (face.size() != 4) continue;
    for (std::size_t s = 0; s < 4; ++s) {
      bool match = true;
      for (std::size_t k = 0; k < 4; ++k) match = match && face[(s + k) % 4] == want[k];
      if (match) outer_face = f;
    }
  }
  if (!outer_face) {
    return TriangulationViolation{"outer-face", want, "no face is the quadrangle north, east, south, west"};
  }

  std::set<std::vector<BoxId>> triangles;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (f == *outer_face) continue;
    if (faces[f].size() != 3) {
      return TriangulationViolation{"triangulated", faces[f], "inner face " + join(faces[f]) + " is not a triangle"};
    }
    auto t = faces[f];
    std::sort(t.begin(), t.end());
    triangles.insert(t);
  }

  auto g = inst.graph();
  for (const auto& e : g.edges()) {
    for (const auto& w : g.neighbors(e.b)) {
      if (w <= e.b || !g.has_edge(e.a, w)) continue;
      std::vector<BoxId> t{e.a, e.b, w};
      if (!triangles.count(t)) {
        return TriangulationViolation{"separating-triangle", t, "triangle " + join(t) + " separates the graph"};
      }
    }
  }
  return std::nullopt;
}

std::variant<Layout, TriangulationFailure> realize_triangulation(const TriangulationInstance& inst) {
  if (auto violation = validate_instance(inst)) {
    return TriangulationFailure{"invalid", violation->message, violation->witness};
  }
  std::map<BoxId, BoxSpec> box;
  for (const auto& b : inst.boxes) box.emplace(b.id, b);
  const auto g = inst.graph();

  Layout layout;
  Staircase stairs;
  Rational area = 0;
  std::set<BoxId> inner;
  for (const auto& [id, b] : box) {
    if (!inst.is_outer(id)) inner.insert(id);
  }

  // Rays stand in for the west and south boxes while inner boxes are placed.
  auto is_placed = [&](const BoxId& v) { return v == inst.west || v == inst.south || layout.contains(v); };

  auto owner_above = [&](const Rational& x, const Rational& y) -> std::optional<BoxId> {
    if (x == 0) return inst.west;
    for (const auto& [id, p] : layout) {
      if (p.right() == x && p.bottom() <= y && y < p.top()) return id;
    }
    return std::nullopt;
  };
  auto owner_right = [&](const Rational& x, const Rational& y) -> std::optional<BoxId> {
    if (y == 0) return inst.south;
    for (const auto& [id, p] : layout) {
      if (p.top() == y && p.left() <= x && x < p.right()) return id;
    }
    return std::nullopt;
  };
  auto is_top_right_corner = [&](const Rational& x, const Rational& y) {
    for (const auto& [id, p] : layout) {
      if (p.right() == x && p.top() == y) return true;
    }
    return false;
  };

  while (!inner.empty()) {
    std::optional<BoxId> chosen;
    Rational cx, cy;
    for (const auto& [x, y] : stairs.concavities()) {
      if (is_top_right_corner(x, y)) continue;
      auto u = owner_above(x, y);
      auto v = owner_right(x, y);
      if (!u || !v || !g.has_edge(*u, *v)) continue;

      std::vector<BoxId> fits;
      for (const auto& w : g.neighbors(*u)) {
        if (g.has_edge(*v, w) && inner.count(w)) fits.push_back(w);
      }
      if (fits.size() != 1) continue;
      const BoxSpec& w = box.at(fits[0]);
      if (x > 0 && y + w.height > stairs.height_left_of(x)) continue;
      if (y > 0 && x + w.width > stairs.extent_below(y)) continue;

      PlacedBox candidate{w, x, y};
      bool touches_all = true;
      for (const auto& n : g.neighbors(w.id)) {
        if (!is_placed(n)) continue;
        bool ok = n == inst.west    ? candidate.left() == 0
                  : n == inst.south ? candidate.bottom() == 0
                                    : touches_along_segment(candidate, layout.at(n));
        if (!ok) {
          touches_all = false;
          break;
        }
      }
      if (!touches_all) continue;
      chosen = w.id;
      cx = x;
      cy = y;
      break;
    }

    if (!chosen) {
      std::vector<BoxId> left(inner.begin(), inner.end());
      return TriangulationFailure{"stuck", "no inner box fits a concavity; unplaced: " + join(left), left};
    }
    const BoxSpec& w = box.at(*chosen);
    layout.place(w, cx, cy);
    stairs.raise(cx, cx + w.width, cy + w.height);
    area += w.width * w.height;
    inner.erase(*chosen);
    if (!stairs.monotone() || stairs.area() != area) {
      throw std::logic_error("staircase lost rectilinear convexity after placing '" + w.id + "'");
    }
  }

  if (stairs.columns().size() != 1) {
    return TriangulationFailure{"not-rectangle",
                                "inner boxes leave " + std::to_string(stairs.concavities().size()) +
                                    " concavities instead of 2",
                                {}};
  }
  const Rational X = stairs.width();
  const Rational Y = stairs.columns()[0].height;
  const BoxSpec& N = box.at(inst.north);
  const BoxSpec& E = box.at(inst.east);
  const BoxSpec& S = box.at(inst.south);
  const BoxSpec& W = box.at(inst.west);
  for (const auto* b : {&N, &S}) {
    if (b->width < X) {
      return TriangulationFailure{"outer-too-small",
                                  "'" + b->id + "' is narrower than the inner rectangle (" + to_string(X) + ")",
                                  {b->id}};
    }
  }
  for (const auto* b : {&E, &W}) {
    if (b->height < Y) {
      return TriangulationFailure{"outer-too-small",
                                  "'" + b->id + "' is lower than the inner rectangle (" + to_string(Y) + ")",
                                  {b->id}};
    }
  }

  // Corners NW, NE, SE, SW; each must be passed by exactly one adjacent outer
  // box, and a box with slack must pass at least one of its corners.
  // Boxes: 0 = N, 1 = E, 2 = S, 3 = W. Corner c lies between boxes
  // candidates[c][0] and candidates[c][1].
  const std::array<Rational, 4> slack{N.width - X, E.height - Y, S.width - X, W.height - Y};
  const std::array<std::array<int, 2>, 4> candidates{{{0, 3}, {1, 0}, {2, 1}, {3, 2}}};
  std::optional<std::array<int, 4>> owner;
  for (int mask = 0; mask < 16 && !owner; ++mask) {
    std::array<int, 4> pick{};
    std::array<int, 4> owned{};
    bool ok = true;
    for (int c = 0; c < 4; ++c) {
      pick[c] = candidates[c][(mask >> c) & 1];
      if (slack[pick[c]] <= 0) ok = false;
      ++owned[pick[c]];
    }
    for (int b = 0; b < 4; ++b) {
      if (slack[b] > 0 && owned[b] == 0) ok = false;
    }
    if (ok) owner = pick;
  }
  if (!owner) {
    return TriangulationFailure{"outer-too-small", "two adjacent outer boxes leave no room to meet along a segment",
                                {inst.north, inst.east, inst.south, inst.west}};
  }
  std::array<Rational, 4> ext;  // how far the owner passes each corner
  for (int c = 0; c < 4; ++c) {
    int b = (*owner)[c];
    int count = 0;
    for (int d = 0; d < 4; ++d) count += (*owner)[d] == b;
    ext[c] = slack[b] / count;
  }
  auto passed_by = [&](int corner, int b) { return (*owner)[corner] == b ? ext[corner] : Rational(0); };
  layout.place(N, -passed_by(0, 0), Y);
  layout.place(E, X, -passed_by(2, 1));
  layout.place(S, -passed_by(3, 2), -S.height);
  layout.place(W, -W.width, -passed_by(3, 3));

  validate_layout(layout);
  for (const auto& e : g.edges()) {
    if (!touches_along_segment(layout.at(e.a), layout.at(e.b))) {
      return TriangulationFailure{"outer-contact", "edge " + e.a + "-" + e.b + " is not realized", {e.a, e.b}};
    }
  }
  return layout;
}

}  // namespace crown
