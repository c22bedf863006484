#include "crown/geometry.hpp"

#include <algorithm>
#include <tuple>

namespace crown {

void validate_boxes(const std::vector<BoxSpec>& boxes) {
  std::set<BoxId> seen;
  for (const auto& b : boxes) {
    if (b.width <= 0 || b.height <= 0) {
      throw std::invalid_argument("box '" + b.id + "' must have positive width and height");
    }
    if (!seen.insert(b.id).second) throw DuplicateIdError(b.id);
  }
}

OverlapError::OverlapError(BoxId a, BoxId b)
    : CrownError("boxes '" + a + "' and '" + b + "' overlap"), a_(std::move(a)), b_(std::move(b)) {}

MissingBoxError::MissingBoxError(BoxId id)
    : CrownError("box '" + id + "' is not placed"), id_(std::move(id)) {}

DuplicateIdError::DuplicateIdError(BoxId id)
    : CrownError("duplicate box id '" + id + "'"), id_(std::move(id)) {}

// ---------------------------------------------------------------------------
// Layout

void Layout::place(const BoxSpec& box, Rational x, Rational y) {
  if (box.width <= 0 || box.height <= 0) {
    throw std::invalid_argument("box '" + box.id + "' must have positive width and height");
  }
  auto [it, inserted] = boxes_.try_emplace(box.id, PlacedBox{box, std::move(x), std::move(y)});
  if (!inserted) throw DuplicateIdError(box.id);
}

void Layout::move(const BoxId& id, Rational x, Rational y) {
  auto it = boxes_.find(id);
  if (it == boxes_.end()) throw MissingBoxError(id);
  it->second.x = std::move(x);
  it->second.y = std::move(y);
}

const PlacedBox& Layout::at(const BoxId& id) const {
  auto it = boxes_.find(id);
  if (it == boxes_.end()) throw MissingBoxError(id);
  return it->second;
}

void Layout::translate(const Rational& dx, const Rational& dy) {
  for (auto& [id, box] : boxes_) {
    box.x += dx;
    box.y += dy;
  }
}

std::optional<BoundingBox> Layout::bounding_box() const {
  if (boxes_.empty()) return std::nullopt;
  auto it = boxes_.begin();
  BoundingBox bb = it->second.bounds();
  for (++it; it != boxes_.end(); ++it) {
    const auto& b = it->second;
    if (b.left() < bb.x0) bb.x0 = b.left();
    if (b.bottom() < bb.y0) bb.y0 = b.bottom();
    if (b.right() > bb.x1) bb.x1 = b.right();
    if (b.top() > bb.y1) bb.y1 = b.top();
  }
  return bb;
}

bool operator==(const Layout& a, const Layout& b) {
  if (a.boxes_.size() != b.boxes_.size()) return false;
  for (auto ia = a.boxes_.begin(), ib = b.boxes_.begin(); ia != a.boxes_.end(); ++ia, ++ib) {
    const auto& pa = ia->second;
    const auto& pb = ib->second;
    if (ia->first != ib->first || pa.x != pb.x || pa.y != pb.y || pa.spec.width != pb.spec.width ||
        pa.spec.height != pb.spec.height) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// ProfitGraph

std::pair<BoxId, BoxId> ProfitGraph::key(const BoxId& a, const BoxId& b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

void ProfitGraph::add_vertex(const BoxId& v) {
  vertices_.insert(v);
  adjacency_[v];
}

void ProfitGraph::set_profit(const BoxId& a, const BoxId& b, const Rational& profit) {
  if (a == b) throw std::invalid_argument("self loop on '" + a + "'");
  if (profit < 0) throw std::invalid_argument("negative profit on {" + a + ", " + b + "}");
  add_vertex(a);
  add_vertex(b);
  edges_[key(a, b)] = profit;
  adjacency_[a].insert(b);
  adjacency_[b].insert(a);
}

void ProfitGraph::remove_edge(const BoxId& a, const BoxId& b) {
  if (edges_.erase(key(a, b)) != 0) {
    adjacency_[a].erase(b);
    adjacency_[b].erase(a);
  }
}

bool ProfitGraph::has_edge(const BoxId& a, const BoxId& b) const {
  return edges_.count(key(a, b)) != 0;
}

Rational ProfitGraph::profit(const BoxId& a, const BoxId& b) const {
  auto it = edges_.find(key(a, b));
  return it == edges_.end() ? Rational(0) : it->second;
}

std::vector<Edge> ProfitGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const auto& [k, p] : edges_) out.push_back({k.first, k.second, p});
  return out;
}

std::vector<BoxId> ProfitGraph::neighbors(const BoxId& v) const {
  auto it = adjacency_.find(v);
  if (it == adjacency_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

std::size_t ProfitGraph::degree(const BoxId& v) const {
  auto it = adjacency_.find(v);
  return it == adjacency_.end() ? 0 : it->second.size();
}

std::size_t ProfitGraph::max_degree() const {
  std::size_t best = 0;
  for (const auto& [v, adj] : adjacency_) best = std::max(best, adj.size());
  return best;
}

Rational ProfitGraph::total_profit() const {
  Rational sum = 0;
  for (const auto& [k, p] : edges_) sum += p;
  return sum;
}

ProfitGraph ProfitGraph::with_edges(const std::vector<Edge>& edges) const {
  ProfitGraph g;
  for (const auto& v : vertices_) g.add_vertex(v);
  for (const auto& e : edges) g.set_profit(e.a, e.b, e.profit);
  return g;
}

// ---------------------------------------------------------------------------
// Contacts

namespace {

enum class PairRelation { Apart, Touch, Overlap };

PairRelation relate(const PlacedBox& p, const PlacedBox& q) {
  Rational ox = std::min(p.right(), q.right()) - std::max(p.left(), q.left());
  if (ox < 0) return PairRelation::Apart;
  Rational oy = std::min(p.top(), q.top()) - std::max(p.bottom(), q.bottom());
  if (oy < 0) return PairRelation::Apart;
  if (ox > 0 && oy > 0) return PairRelation::Overlap;
  return PairRelation::Touch;
}

Contact classify(const PlacedBox& p, const PlacedBox& q) {
  const PlacedBox& first = p.spec.id < q.spec.id ? p : q;
  const PlacedBox& second = p.spec.id < q.spec.id ? q : p;
  Rational x_lo = std::max(p.left(), q.left());
  Rational x_hi = std::min(p.right(), q.right());
  Rational y_lo = std::max(p.bottom(), q.bottom());
  Rational y_hi = std::min(p.top(), q.top());

  Contact c{first.spec.id, second.spec.id, Orientation::Horizontal, false, 0, 0, 0};
  if (x_lo == x_hi && y_lo < y_hi) {
    c.orientation = Orientation::Horizontal;
    c.fixed = x_lo;
    c.lo = y_lo;
    c.hi = y_hi;
  } else if (y_lo == y_hi && x_lo < x_hi) {
    c.orientation = Orientation::Vertical;
    c.fixed = y_lo;
    c.lo = x_lo;
    c.hi = x_hi;
  } else {
    // Point contact: horizontal iff it is the south-west corner of one box and
    // the north-east corner of the other.
    c.degenerate = true;
    auto sw_ne = [&](const PlacedBox& sw, const PlacedBox& ne) {
      return sw.left() == x_lo && sw.bottom() == y_lo && ne.right() == x_lo && ne.top() == y_lo;
    };
    if (sw_ne(p, q) || sw_ne(q, p)) {
      c.orientation = Orientation::Horizontal;
      c.fixed = x_lo;
      c.lo = c.hi = y_lo;
    } else {
      c.orientation = Orientation::Vertical;
      c.fixed = y_lo;
      c.lo = c.hi = x_lo;
    }
  }
  return c;
}

// Visits every pair whose closed x-ranges intersect, in an order independent
// of how ties in x are broken (results are sorted by the callers).
template <typename Visit>
void for_each_x_overlapping_pair(const Layout& layout, Visit&& visit) {
  std::vector<const PlacedBox*> order;
  order.reserve(layout.size());
  for (const auto& [id, box] : layout) order.push_back(&box);
  std::stable_sort(order.begin(), order.end(),
                   [](const PlacedBox* a, const PlacedBox* b) { return a->left() < b->left(); });
  for (std::size_t i = 0; i < order.size(); ++i) {
    Rational right = order[i]->right();
    for (std::size_t j = i + 1; j < order.size() && order[j]->left() <= right; ++j) {
      visit(*order[i], *order[j]);
    }
  }
}

}  // namespace

void validate_layout(const Layout& layout) {
  std::optional<std::pair<BoxId, BoxId>> worst;
  for_each_x_overlapping_pair(layout, [&](const PlacedBox& p, const PlacedBox& q) {
    if (relate(p, q) == PairRelation::Overlap) {
      auto pr = p.spec.id < q.spec.id ? std::make_pair(p.spec.id, q.spec.id)
                                      : std::make_pair(q.spec.id, p.spec.id);
      if (!worst || pr < *worst) worst = pr;
    }
  });
  if (worst) throw OverlapError(worst->first, worst->second);
}

std::vector<Contact> detect_contacts(const Layout& layout) {
  std::vector<Contact> contacts;
  std::optional<std::pair<BoxId, BoxId>> overlap;
  for_each_x_overlapping_pair(layout, [&](const PlacedBox& p, const PlacedBox& q) {
    switch (relate(p, q)) {
      case PairRelation::Apart:
        break;
      case PairRelation::Touch:
        contacts.push_back(classify(p, q));
        break;
      case PairRelation::Overlap: {
        auto pr = p.spec.id < q.spec.id ? std::make_pair(p.spec.id, q.spec.id)
                                        : std::make_pair(q.spec.id, p.spec.id);
        if (!overlap || pr < *overlap) overlap = pr;
        break;
      }
    }
  });
  if (overlap) throw OverlapError(overlap->first, overlap->second);
  std::sort(contacts.begin(), contacts.end(), [](const Contact& x, const Contact& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  return contacts;
}

Rational realized_profit(const std::vector<Contact>& contacts, const ProfitGraph& graph) {
  Rational sum = 0;
  for (const auto& c : contacts) sum += graph.profit(c.a, c.b);
  return sum;
}

Rational realized_profit(const Layout& layout, const ProfitGraph& graph) {
  return realized_profit(detect_contacts(layout), graph);
}

bool realizes(const Layout& layout, const ProfitGraph& graph) {
  for (const auto& v : graph.vertices()) {
    if (!layout.contains(v)) throw MissingBoxError(v);
  }
  std::set<std::pair<BoxId, BoxId>> touching;
  for (const auto& c : detect_contacts(layout)) touching.emplace(c.a, c.b);
  for (const auto& e : graph.edges()) {
    if (!touching.count({e.a, e.b})) return false;
  }
  return true;
}

Layout pack_components(const std::vector<Layout>& components, const Rational& gap) {
  Layout out;
  Rational cursor = 0;
  for (const auto& component : components) {
    auto bb = component.bounding_box();
    if (!bb) continue;
    Rational dx = cursor - bb->x0;
    Rational dy = -bb->y0;
    for (const auto& [id, box] : component) {
      if (out.contains(id)) throw DuplicateIdError(id);
      out.place(box.spec, box.x + dx, box.y + dy);
    }
    cursor += bb->width() + gap;
  }
  return out;
}

void append_discard_row(Layout& layout, const std::vector<BoxSpec>& boxes, const Rational& gap) {
  if (boxes.empty()) return;
  auto bb = layout.bounding_box();
  Rational x = bb ? bb->x0 : Rational(0);
  Rational top = bb ? Rational(bb->y0 - gap) : Rational(0);
  for (const auto& b : boxes) {
    layout.place(b, x, top - b.height);
    x += b.width + gap;
  }
}

}  // namespace crown
