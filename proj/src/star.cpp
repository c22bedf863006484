#include "crown/star.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <stdexcept>

#include "crown/gap.hpp"
#include "crown/planarity.hpp"

namespace crown {
namespace {

std::map<BoxId, BoxSpec> index_boxes(const std::vector<BoxSpec>& boxes) {
  std::map<BoxId, BoxSpec> out;
  for (const auto& b : boxes) {
    if (!out.emplace(b.id, b).second) throw DuplicateIdError(b.id);
  }
  return out;
}

// Lexicographic k-subsets of {0..n-1}, k = 0..max_k.
std::vector<std::vector<std::size_t>> small_subsets(std::size_t n, std::size_t max_k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  for (std::size_t k = 0; k <= std::min(n, max_k); ++k) {
    auto rec = [&](auto&& self, std::size_t start) -> void {
      if (current.size() == k) {
        out.push_back(current);
        return;
      }
      for (std::size_t i = start; i + (k - current.size()) <= n; ++i) {
        current.push_back(i);
        self(self, i + 1);
        current.pop_back();
      }
    };
    rec(rec, 0);
  }
  return out;
}

struct SideAssignment {
  std::vector<std::vector<std::size_t>> sides;  // top, bottom, left, right (leaf indices)
  Rational value;
};

SideAssignment assign_sides(const StarInstance& inst, const std::vector<bool>& is_corner, const Rational& eps) {
  GapInstance gap;
  gap.bins = {{"top", inst.center.width},
              {"bottom", inst.center.width},
              {"left", inst.center.height},
              {"right", inst.center.height}};
  std::vector<std::size_t> origin;
  for (std::size_t i = 0; i < inst.leaves.size(); ++i) {
    if (is_corner[i]) continue;
    const auto& leaf = inst.leaves[i];
    const Rational& p = inst.profits.at(leaf.id);
    gap.items.push_back({leaf.id, {leaf.width, leaf.width, leaf.height, leaf.height}, {p, p, p, p}});
    origin.push_back(i);
  }
  auto assignment = gap_sequential(gap, eps);
  SideAssignment out;
  out.sides.resize(4);
  out.value = assignment.value(gap);
  for (std::size_t j = 0; j < origin.size(); ++j) {
    if (assignment.bin_of[j]) out.sides[*assignment.bin_of[j]].push_back(origin[j]);
  }
  return out;
}

// Roots each component (at `root` first when given, then at the smallest
// unvisited id) and splits edges by the parity of the parent's depth.
std::array<StarForest, 2> split_by_depth(const ProfitGraph& graph, const std::optional<BoxId>& root) {
  std::map<BoxId, std::size_t> depth;
  std::array<std::map<BoxId, std::vector<BoxId>>, 2> children;

  auto bfs = [&](const BoxId& start) {
    std::deque<BoxId> queue{start};
    std::map<BoxId, BoxId> parent;
    depth[start] = 0;
    while (!queue.empty()) {
      BoxId u = queue.front();
      queue.pop_front();
      for (const auto& v : graph.neighbors(u)) {
        auto p = parent.find(u);
        if (p != parent.end() && p->second == v) continue;
        if (depth.count(v)) throw NotATreeError("graph contains a cycle through '" + v + "'");
        depth[v] = depth[u] + 1;
        parent[v] = u;
        children[depth[u] % 2][u].push_back(v);
        queue.push_back(v);
      }
    }
  };

  if (root) bfs(*root);
  for (const auto& v : graph.vertices()) {
    if (!depth.count(v)) bfs(v);
  }

  std::array<StarForest, 2> out;
  for (std::size_t f = 0; f < 2; ++f) {
    for (auto& [center, leaves] : children[f]) {
      std::sort(leaves.begin(), leaves.end());
      out[f].stars.push_back({center, leaves});
    }
  }
  return out;
}

}  // namespace

void StarInstance::validate() const {
  std::vector<BoxSpec> all = leaves;
  all.push_back(center);
  validate_boxes(all);
  for (const auto& leaf : leaves) {
    auto it = profits.find(leaf.id);
    if (it == profits.end()) throw std::invalid_argument("leaf '" + leaf.id + "' has no profit");
    if (it->second < 0) throw std::invalid_argument("leaf '" + leaf.id + "' has a negative profit");
  }
}

Rational StarInstance::total_profit() const {
  Rational sum = 0;
  for (const auto& leaf : leaves) sum += profits.at(leaf.id);
  return sum;
}

std::size_t StarForest::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : stars) n += s.leaves.size();
  return n;
}

StarSolution solve_star_detailed(const StarInstance& inst, const Rational& eps) {
  inst.validate();
  const std::size_t n = inst.leaves.size();

  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  if (n > kStarFullCornerSearch) {
    std::stable_sort(pool.begin(), pool.end(), [&](std::size_t a, std::size_t b) {
      return inst.profits.at(inst.leaves[a].id) > inst.profits.at(inst.leaves[b].id);
    });
    pool.resize(kStarCornerPool);
    std::sort(pool.begin(), pool.end());
  }

  std::optional<std::vector<std::size_t>> best_corners;
  SideAssignment best_sides;
  Rational best_value = -1;
  for (const auto& subset : small_subsets(pool.size(), 4)) {
    std::vector<bool> is_corner(n, false);
    Rational value = 0;
    std::vector<std::size_t> corners;
    for (auto k : subset) {
      corners.push_back(pool[k]);
      is_corner[pool[k]] = true;
      value += inst.profits.at(inst.leaves[pool[k]].id);
    }
    auto sides = assign_sides(inst, is_corner, eps);
    value += sides.value;
    if (value > best_value) {
      best_value = value;
      best_corners = corners;
      best_sides = std::move(sides);
    }
  }

  const Rational& w0 = inst.center.width;
  const Rational& h0 = inst.center.height;
  StarSolution out;
  out.value = best_value;
  out.layout.place(inst.center, 0, 0);
  std::vector<bool> placed(n, false);

  for (std::size_t c = 0; c < best_corners->size(); ++c) {
    std::size_t i = (*best_corners)[c];
    const auto& leaf = inst.leaves[i];
    switch (c) {
      case 0: out.layout.place(leaf, w0, h0); break;
      case 1: out.layout.place(leaf, -leaf.width, h0); break;
      case 2: out.layout.place(leaf, -leaf.width, -leaf.height); break;
      default: out.layout.place(leaf, w0, -leaf.height); break;
    }
    out.corners.push_back(leaf.id);
    placed[i] = true;
  }

  for (std::size_t side = 0; side < 4; ++side) {
    Rational cursor = 0;
    for (auto i : best_sides.sides[side]) {
      const auto& leaf = inst.leaves[i];
      switch (side) {
        case 0: out.layout.place(leaf, cursor, h0); cursor += leaf.width; break;
        case 1: out.layout.place(leaf, cursor, -leaf.height); cursor += leaf.width; break;
        case 2: out.layout.place(leaf, -leaf.width, cursor); cursor += leaf.height; break;
        default: out.layout.place(leaf, w0, cursor); cursor += leaf.height; break;
      }
      placed[i] = true;
    }
  }

  std::vector<BoxSpec> discarded;
  for (std::size_t i = 0; i < n; ++i) {
    if (!placed[i]) discarded.push_back(inst.leaves[i]);
  }
  append_discard_row(out.layout, discarded);
  return out;
}

Layout solve_star(const StarInstance& inst, const Rational& eps) { return solve_star_detailed(inst, eps).layout; }

bool is_forest(const ProfitGraph& graph) {
  try {
    split_by_depth(graph, std::nullopt);
    return true;
  } catch (const NotATreeError&) {
    return false;
  }
}

std::array<StarForest, 2> partition_tree(const ProfitGraph& tree, const BoxId& root) {
  if (!tree.has_vertex(root)) throw NotATreeError("root '" + root + "' is not a vertex");
  if (tree.edge_count() + 1 != tree.vertices().size()) {
    throw NotATreeError("a tree on " + std::to_string(tree.vertices().size()) + " vertices needs " +
                        std::to_string(tree.vertices().size() - 1) + " edges");
  }
  return split_by_depth(tree, root);
}

std::array<StarForest, 2> partition_forest(const ProfitGraph& forest) { return split_by_depth(forest, std::nullopt); }

std::vector<ProfitGraph> decompose_forests(const ProfitGraph& graph) {
  if (!is_planar(graph)) throw NotPlanarError("graph is not planar");

  std::map<BoxId, std::size_t> index;
  for (const auto& v : graph.vertices()) index.emplace(v, index.size());
  const auto edges = graph.edges();
  const std::size_t V = index.size();
  const std::size_t E = edges.size();
  constexpr std::size_t kForests = 3;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::vector<std::pair<std::size_t, std::size_t>> ends(E);
  for (std::size_t e = 0; e < E; ++e) ends[e] = {index.at(edges[e].a), index.at(edges[e].b)};

  std::vector<std::size_t> owner(E, kNone);
  // adjacency[f][v] = {(neighbor, edge)}
  std::vector<std::vector<std::set<std::pair<std::size_t, std::size_t>>>> adjacency(
      kForests, std::vector<std::set<std::pair<std::size_t, std::size_t>>>(V));

  auto path_in_forest = [&](std::size_t f, std::size_t from, std::size_t to) -> std::optional<std::vector<std::size_t>> {
    std::vector<std::size_t> via(V, kNone);
    std::vector<bool> seen(V, false);
    std::deque<std::size_t> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      if (u == to) break;
      for (const auto& [w, e] : adjacency[f][u]) {
        if (seen[w]) continue;
        seen[w] = true;
        via[w] = e;
        queue.push_back(w);
      }
    }
    if (!seen[to]) return std::nullopt;
    std::vector<std::size_t> path;
    for (std::size_t v = to; v != from;) {
      std::size_t e = via[v];
      path.push_back(e);
      v = ends[e].first == v ? ends[e].second : ends[e].first;
    }
    return path;
  };

  auto move_edge = [&](std::size_t e, std::size_t f) {
    auto [a, b] = ends[e];
    if (owner[e] != kNone) {
      adjacency[owner[e]][a].erase({b, e});
      adjacency[owner[e]][b].erase({a, e});
    }
    owner[e] = f;
    adjacency[f][a].insert({b, e});
    adjacency[f][b].insert({a, e});
  };

  // Matroid partition: shortest augmenting sequences of edge swaps.
  for (std::size_t e = 0; e < E; ++e) {
    std::vector<std::size_t> parent(E, kNone);
    std::vector<bool> labeled(E, false);
    std::deque<std::size_t> queue{e};
    labeled[e] = true;
    bool done = false;
    while (!queue.empty() && !done) {
      std::size_t g = queue.front();
      queue.pop_front();
      for (std::size_t f = 0; f < kForests && !done; ++f) {
        if (owner[g] == f) continue;
        auto cycle = path_in_forest(f, ends[g].first, ends[g].second);
        if (!cycle) {
          std::size_t cur = g;
          std::size_t target = f;
          while (true) {
            std::size_t previous = owner[cur];
            move_edge(cur, target);
            if (parent[cur] == kNone) break;
            cur = parent[cur];
            target = previous;
          }
          done = true;
          break;
        }
        for (auto h : *cycle) {
          if (labeled[h]) continue;
          labeled[h] = true;
          parent[h] = g;
          queue.push_back(h);
        }
      }
    }
    if (!done) throw std::logic_error("forest decomposition failed on a planar graph");
  }

  std::vector<ProfitGraph> out;
  for (std::size_t f = 0; f < kForests; ++f) {
    std::vector<Edge> part;
    for (std::size_t e = 0; e < E; ++e) {
      if (owner[e] == f) part.push_back(edges[e]);
    }
    if (!part.empty()) out.push_back(graph.with_edges(part));
  }
  return out;
}

std::vector<StarForest> partition_planar(const ProfitGraph& graph) {
  std::vector<StarForest> out;
  for (const auto& forest : decompose_forests(graph)) {
    for (auto& stars : partition_forest(forest)) {
      if (!stars.stars.empty()) out.push_back(std::move(stars));
    }
  }
  return out;
}

Layout solve_star_forest(const StarForest& forest, const std::vector<BoxSpec>& boxes, const ProfitGraph& graph,
                         const Rational& eps) {
  auto by_id = index_boxes(boxes);
  auto box = [&](const BoxId& id) -> const BoxSpec& {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw MissingBoxError(id);
    return it->second;
  };

  std::vector<Layout> components;
  std::set<BoxId> used;
  for (const auto& star : forest.stars) {
    StarInstance inst;
    inst.center = box(star.center);
    used.insert(star.center);
    for (const auto& leaf : star.leaves) {
      inst.leaves.push_back(box(leaf));
      inst.profits[leaf] = graph.profit(star.center, leaf);
      used.insert(leaf);
    }
    components.push_back(solve_star(inst, eps));
  }
  for (const auto& [id, spec] : by_id) {
    if (used.count(id)) continue;
    Layout single;
    single.place(spec, 0, 0);
    components.push_back(std::move(single));
  }
  return pack_components(components);
}

Layout max_crown_stars(const ProfitGraph& graph, const std::vector<BoxSpec>& boxes, const Rational& eps) {
  auto by_id = index_boxes(boxes);
  for (const auto& v : graph.vertices()) {
    if (!by_id.count(v)) throw MissingBoxError(v);
  }

  std::vector<StarForest> forests;
  if (is_forest(graph)) {
    for (auto& f : partition_forest(graph)) {
      if (!f.stars.empty()) forests.push_back(std::move(f));
    }
  } else {
    forests = partition_planar(graph);
  }
  if (forests.empty()) forests.emplace_back();

  std::optional<Layout> best;
  Rational best_profit = -1;
  for (const auto& forest : forests) {
    Layout layout = solve_star_forest(forest, boxes, graph, eps);
    Rational profit = realized_profit(layout, graph);
    if (profit > best_profit) {
      best_profit = profit;
      best = std::move(layout);
    }
  }
  return *best;
}

}  // namespace crown
