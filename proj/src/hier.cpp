#include "crown/hier.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace crown {
namespace {

struct Split {
  std::vector<BoxId> succ_right_to_left;
  std::vector<BoxId> pred_left_to_right;
};

// Reads the successor and predecessor blocks of a bimodal rotation.
Split split_rotation(const EmbeddedDag& dag, const BoxId& v) {
  auto it = dag.rotation.find(v);
  std::vector<BoxId> list = it == dag.rotation.end() ? std::vector<BoxId>{} : it->second;
  auto succ = dag.successors(v);
  auto is_out = [&](const BoxId& w) { return std::binary_search(succ.begin(), succ.end(), w); };

  Split out;
  const std::size_t n = list.size();
  if (succ.empty()) {
    out.pred_left_to_right = list;
    return out;
  }
  if (succ.size() == n) {
    out.succ_right_to_left = list;
    return out;
  }
  std::size_t start = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_out(list[i]) && !is_out(list[(i + n - 1) % n])) {
      start = i;
      break;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const BoxId& w = list[(start + k) % n];
    (is_out(w) ? out.succ_right_to_left : out.pred_left_to_right).push_back(w);
  }
  return out;
}

std::string describe(const DifferenceConstraint& c) {
  return "l[" + c.to + "] - l[" + c.from + "] <= " + to_string(c.bound) + " (" + c.reason + ")";
}

}  // namespace

std::vector<BoxId> EmbeddedDag::successors(const BoxId& v) const {
  std::vector<BoxId> out;
  for (const auto& [a, b] : edges) {
    if (a == v) out.push_back(b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BoxId> EmbeddedDag::predecessors(const BoxId& v) const {
  std::vector<BoxId> out;
  for (const auto& [a, b] : edges) {
    if (b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<EmbeddingViolation> validate_embedding(const EmbeddedDag& dag) {
  std::set<BoxId> known;
  for (const auto& v : dag.vertices) {
    if (!known.insert(v).second) return EmbeddingViolation{"duplicate-vertex", v, "vertex '" + v + "' listed twice"};
  }
  std::set<std::pair<BoxId, BoxId>> seen;
  std::map<BoxId, std::set<BoxId>> neighbours;
  for (const auto& [a, b] : dag.edges) {
    for (const auto& v : {a, b}) {
      if (!known.count(v)) return EmbeddingViolation{"unknown-vertex", v, "edge endpoint '" + v + "' is not a vertex"};
    }
    if (a == b) return EmbeddingViolation{"self-loop", a, "self loop at '" + a + "'"};
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    if (!seen.insert(key).second) {
      return EmbeddingViolation{"duplicate-edge", key.first, "edge {" + key.first + ", " + key.second + "} repeated"};
    }
    neighbours[a].insert(b);
    neighbours[b].insert(a);
  }
  for (const auto& [v, list] : dag.rotation) {
    if (!known.count(v)) return EmbeddingViolation{"unknown-vertex", v, "rotation given for unknown vertex '" + v + "'"};
  }
  for (const auto& v : known) {
    auto it = dag.rotation.find(v);
    std::vector<BoxId> list = it == dag.rotation.end() ? std::vector<BoxId>{} : it->second;
    std::set<BoxId> as_set(list.begin(), list.end());
    if (as_set.size() != list.size() || as_set != neighbours[v]) {
      return EmbeddingViolation{"rotation", v, "rotation at '" + v + "' is not a permutation of its neighbours"};
    }
  }

  // Acyclicity (Kahn).
  std::map<BoxId, std::size_t> out_degree;
  for (const auto& v : known) out_degree[v] = 0;
  for (const auto& [a, b] : dag.edges) ++out_degree[a];
  {
    auto remaining = out_degree;
    std::deque<BoxId> queue;
    for (const auto& [v, d] : remaining) {
      if (d == 0) queue.push_back(v);
    }
    std::size_t removed = 0;
    while (!queue.empty()) {
      BoxId v = queue.front();
      queue.pop_front();
      ++removed;
      for (const auto& u : dag.predecessors(v)) {
        if (--remaining[u] == 0) queue.push_back(u);
      }
    }
    if (removed != known.size()) {
      for (const auto& [v, d] : remaining) {
        if (d > 0) return EmbeddingViolation{"cycle", v, "directed cycle through '" + v + "'"};
      }
    }
  }

  std::vector<BoxId> sinks;
  for (const auto& [v, d] : out_degree) {
    if (d == 0) sinks.push_back(v);
  }
  if (sinks.size() != 1) {
    BoxId witness = sinks.size() > 1 ? sinks[1] : BoxId{};
    return EmbeddingViolation{"sink", witness, "expected exactly one sink, found " + std::to_string(sinks.size())};
  }

  std::set<BoxId> reached{sinks[0]};
  std::deque<BoxId> queue{sinks[0]};
  while (!queue.empty()) {
    BoxId v = queue.front();
    queue.pop_front();
    for (const auto& u : dag.predecessors(v)) {
      if (reached.insert(u).second) queue.push_back(u);
    }
  }
  for (const auto& v : known) {
    if (!reached.count(v)) return EmbeddingViolation{"unreachable", v, "'" + v + "' has no path to the sink"};
  }

  for (const auto& v : known) {
    const auto& list = dag.rotation.count(v) ? dag.rotation.at(v) : std::vector<BoxId>{};
    auto succ = dag.successors(v);
    std::size_t changes = 0;
    for (std::size_t i = 0; i < list.size(); ++i) {
      bool here = std::binary_search(succ.begin(), succ.end(), list[i]);
      bool next = std::binary_search(succ.begin(), succ.end(), list[(i + 1) % list.size()]);
      if (here != next) ++changes;
    }
    if (changes > 2) {
      return EmbeddingViolation{"bimodal", v, "incoming and outgoing edges interleave around '" + v + "'"};
    }
  }
  return std::nullopt;
}

BoxId find_sink(const EmbeddedDag& dag) {
  for (const auto& v : dag.vertices) {
    if (dag.successors(v).empty()) return v;
  }
  throw std::invalid_argument("dag has no sink");
}

std::vector<BoxId> predecessors_left_to_right(const EmbeddedDag& dag, const BoxId& v) {
  return split_rotation(dag, v).pred_left_to_right;
}

std::vector<BoxId> successors_left_to_right(const EmbeddedDag& dag, const BoxId& v) {
  auto s = split_rotation(dag, v).succ_right_to_left;
  std::reverse(s.begin(), s.end());
  return s;
}

std::variant<std::map<BoxId, VerticalSpan>, YConflict> assign_y(const EmbeddedDag& dag,
                                                                 const std::map<BoxId, Rational>& heights) {
  const BoxId sink = find_sink(dag);
  std::map<BoxId, VerticalSpan> y;
  y[sink] = {0, -heights.at(sink)};
  std::vector<BoxId> stack{sink};
  while (!stack.empty()) {
    BoxId j = stack.back();
    stack.pop_back();
    for (const auto& i : dag.predecessors(j)) {
      Rational t = y.at(j).bottom;
      auto it = y.find(i);
      if (it != y.end()) {
        if (it->second.top != t) return YConflict{i, it->second.top, t};
        continue;
      }
      y[i] = {t, t - heights.at(i)};
      stack.push_back(i);
    }
  }
  return y;
}

std::variant<std::vector<OrderingConstraint>, SweepFailure> sweep_order(const EmbeddedDag& dag,
                                                                        const std::map<BoxId, VerticalSpan>& y) {
  std::set<OrderingConstraint> constraints;
  std::set<BoxId> ended;
  std::vector<BoxId> list{find_sink(dag)};
  while (!list.empty()) {
    Rational level = y.at(list[0]).bottom;
    for (const auto& v : list) level = std::max(level, y.at(v).bottom);

    std::vector<BoxId> next;
    for (const auto& v : list) {
      if (y.at(v).bottom != level) {
        next.push_back(v);
        continue;
      }
      ended.insert(v);
      for (const auto& u : predecessors_left_to_right(dag, v)) {
        if (ended.count(u)) return SweepFailure{u, "'" + u + "' re-enters the sweep after ending"};
        if (next.empty() || next.back() != u) next.push_back(u);
      }
    }
    std::set<BoxId> present;
    for (const auto& v : next) {
      if (!present.insert(v).second) {
        return SweepFailure{v, "'" + v + "' would have to appear at two separate places in the left-to-right order"};
      }
    }
    for (std::size_t i = 0; i + 1 < next.size(); ++i) constraints.insert({next[i], next[i + 1]});
    list = std::move(next);
  }
  return std::vector<OrderingConstraint>(constraints.begin(), constraints.end());
}

std::variant<std::map<BoxId, Rational>, XInfeasible> solve_x(const std::map<BoxId, Rational>& widths,
                                                             const std::vector<std::pair<BoxId, BoxId>>& edges,
                                                             const std::vector<OrderingConstraint>& order,
                                                             const Rational& delta, const BoxId& anchor) {
  std::vector<DifferenceConstraint> cs;
  for (const auto& [i, j] : edges) {
    for (const auto& v : {i, j}) {
      if (widths.at(v) < delta) {
        return XInfeasible{{{v, v, widths.at(v) - delta, "width of '" + v + "' is below delta"}}};
      }
    }
    cs.push_back({i, j, widths.at(i) - delta, "edge " + i + "->" + j + " overlap"});
    cs.push_back({j, i, widths.at(j) - delta, "edge " + i + "->" + j + " overlap"});
  }
  for (const auto& o : order) {
    cs.push_back({o.right, o.left, -widths.at(o.left), o.left + " left of " + o.right});
  }

  std::map<BoxId, Rational> dist;
  for (const auto& [v, w] : widths) dist[v] = 0;
  std::map<BoxId, std::size_t> via;
  const std::size_t n = dist.size();
  std::optional<BoxId> last_updated;
  for (std::size_t round = 0; round <= n; ++round) {
    last_updated.reset();
    for (std::size_t c = 0; c < cs.size(); ++c) {
      Rational candidate = dist[cs[c].from] + cs[c].bound;
      if (candidate < dist[cs[c].to]) {
        dist[cs[c].to] = candidate;
        via[cs[c].to] = c;
        last_updated = cs[c].to;
      }
    }
    if (!last_updated) break;
  }

  if (last_updated) {
    BoxId v = *last_updated;
    for (std::size_t k = 0; k < n; ++k) v = cs[via.at(v)].from;
    std::vector<DifferenceConstraint> cycle;
    BoxId u = v;
    do {
      const auto& c = cs[via.at(u)];
      cycle.push_back(c);
      u = c.from;
    } while (u != v);
    std::reverse(cycle.begin(), cycle.end());
    return XInfeasible{cycle};
  }

  Rational shift = dist.at(anchor);
  for (auto& [v, x] : dist) x -= shift;
  return dist;
}

HierResult solve_hier(const EmbeddedDag& dag, const std::vector<BoxSpec>& boxes, const std::optional<Rational>& delta) {
  validate_boxes(boxes);
  std::map<BoxId, BoxSpec> by_id;
  for (const auto& b : boxes) by_id.emplace(b.id, b);
  for (const auto& v : dag.vertices) {
    if (!by_id.count(v)) throw MissingBoxError(v);
  }
  if (by_id.size() != dag.vertices.size()) throw std::invalid_argument("every box must be a dag vertex");
  if (boxes.empty()) return Layout{};

  Rational d;
  if (delta) {
    d = *delta;
  } else {
    d = boxes[0].width;
    for (const auto& b : boxes) d = std::min(d, b.width);
    d /= 1000;
  }
  if (d <= 0) throw std::invalid_argument("delta must be positive");

  if (auto violation = validate_embedding(dag)) {
    return HierFailure{"embedding", violation->message, {violation->kind, violation->vertex}};
  }

  std::map<BoxId, Rational> heights, widths;
  for (const auto& [id, b] : by_id) {
    heights[id] = b.height;
    widths[id] = b.width;
  }

  auto ys = assign_y(dag, heights);
  if (auto* conflict = std::get_if<YConflict>(&ys)) {
    return HierFailure{"assign_y",
                       "box '" + conflict->box + "' needs two different tops",
                       {conflict->box, to_string(conflict->first), to_string(conflict->second)}};
  }
  const auto& y = std::get<std::map<BoxId, VerticalSpan>>(ys);

  auto sweep = sweep_order(dag, y);
  if (auto* failure = std::get_if<SweepFailure>(&sweep)) {
    return HierFailure{"sweep_order", failure->message, {failure->box}};
  }
  const auto& order = std::get<std::vector<OrderingConstraint>>(sweep);

  const BoxId sink = find_sink(dag);
  auto xs = solve_x(widths, dag.edges, order, d, sink);
  if (auto* infeasible = std::get_if<XInfeasible>(&xs)) {
    HierFailure failure{"solve_x", "the horizontal constraints are infeasible", {}};
    for (const auto& c : infeasible->witness) failure.witness.push_back(describe(c));
    return failure;
  }
  const auto& x = std::get<std::map<BoxId, Rational>>(xs);

  Layout layout;
  for (const auto& [id, b] : by_id) layout.place(b, x.at(id), y.at(id).bottom);

  // The embedding must be the one the layout induces.
  for (const auto& v : dag.vertices) {
    auto by_left = [&](std::vector<BoxId> ids) {
      std::stable_sort(ids.begin(), ids.end(), [&](const BoxId& a, const BoxId& b) { return x.at(a) < x.at(b); });
      return ids;
    };
    if (by_left(dag.successors(v)) != successors_left_to_right(dag, v) ||
        by_left(dag.predecessors(v)) != predecessors_left_to_right(dag, v)) {
      return HierFailure{"embedding", "the rotation at '" + v + "' is not realizable", {v}};
    }
  }
  return layout;
}

}  // namespace crown
