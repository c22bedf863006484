#include "crown/cycle.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace crown {

Layout layout_cycle(const std::vector<BoxSpec>& cycle) {
  const std::size_t n = cycle.size();
  if (n < 3) throw CycleTooShortError("a cycle needs at least 3 boxes, got " + std::to_string(n));
  validate_boxes(cycle);

  Rational total = 0;
  for (const auto& b : cycle) total += b.width;

  // t = largest index with w_1 + ... + w_t < W / 2 (0-based: boxes [0, t)).
  std::size_t t = 0;
  Rational prefix = 0;
  while (t < n && (prefix + cycle[t].width) * 2 < total) prefix += cycle[t++].width;

  Layout layout;
  Rational top = 0;
  for (std::size_t i = 0; i < t; ++i) {
    layout.place(cycle[i], top, 0);
    top += cycle[i].width;
  }
  Rational bottom = 0;
  for (std::size_t i = n; i-- > t + 1;) {
    layout.place(cycle[i], bottom, -cycle[i].height);
    bottom += cycle[i].width;
  }

  const BoxSpec& closing = cycle[t];
  if (top < bottom) {
    layout.place(closing, top, 0);
  } else if (bottom < top) {
    layout.place(closing, bottom, -closing.height);
  } else {
    layout.place(closing, top, -closing.height / 2);
  }
  return layout;
}

Layout layout_path(const std::vector<BoxSpec>& path) {
  validate_boxes(path);
  Layout layout;
  Rational x = 0;
  for (const auto& b : path) {
    layout.place(b, x, 0);
    x += b.width;
  }
  return layout;
}

CycleCover decompose_cycle_covers(const ProfitGraph& graph) {
  const auto edges = graph.edges();
  const std::size_t k = (graph.max_degree() + 1) / 2;
  CycleCover out;
  if (edges.empty()) return out;

  std::map<BoxId, std::size_t> index;
  for (const auto& v : graph.vertices()) index.emplace(v, index.size());
  const std::size_t V = index.size();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  // Augmented simple graph: real edges first, then dummy edges.
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  for (const auto& e : edges) ends.emplace_back(index.at(e.a), index.at(e.b));
  const std::size_t real_edges = ends.size();

  std::vector<std::size_t> component(V, kNone);
  std::size_t components = 0;
  {
    std::vector<std::vector<std::size_t>> adj(V);
    for (const auto& [a, b] : ends) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (std::size_t s = 0; s < V; ++s) {
      if (component[s] != kNone) continue;
      std::vector<std::size_t> stack{s};
      component[s] = components;
      while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (auto w : adj[u]) {
          if (component[w] == kNone) {
            component[w] = components;
            stack.push_back(w);
          }
        }
      }
      ++components;
    }
    for (std::size_t v = 0; v < V; ++v) {
      if (adj[v].size() % 2 == 1) ends.emplace_back(v, V + component[v]);
    }
  }

  // Orientation along closed trails: smallest start, smallest unused neighbour.
  const std::size_t N = V + components;
  std::vector<std::set<std::pair<std::size_t, std::size_t>>> unused(N);  // (neighbour, edge)
  for (std::size_t e = 0; e < ends.size(); ++e) {
    unused[ends[e].first].insert({ends[e].second, e});
    unused[ends[e].second].insert({ends[e].first, e});
  }
  std::vector<std::pair<std::size_t, std::size_t>> arc(ends.size());  // (tail, head)
  for (std::size_t s = 0; s < N; ++s) {
    while (!unused[s].empty()) {
      std::size_t u = s;
      do {
        auto [w, e] = *unused[u].begin();
        unused[u].erase(unused[u].begin());
        unused[w].erase({u, e});
        arc[e] = {u, w};
        u = w;
      } while (!unused[u].empty());
    }
  }

  // Bipartite colouring: tail copies are nodes [0, N), head copies [N, 2N).
  // Dummy endpoints get a private node each, so only real vertices constrain.
  std::vector<std::pair<std::size_t, std::size_t>> nodes(ends.size());
  std::size_t next_private = 2 * N;
  for (std::size_t e = 0; e < ends.size(); ++e) {
    auto [tail, head] = arc[e];
    std::size_t left = tail < V ? tail : next_private++;
    std::size_t right = head < V ? N + head : next_private++;
    nodes[e] = {left, right};
  }
  std::vector<std::vector<std::size_t>> at(next_private, std::vector<std::size_t>(k, kNone));
  std::vector<std::size_t> colour(ends.size(), kNone);
  auto free_colour = [&](std::size_t node) {
    for (std::size_t c = 0; c < k; ++c) {
      if (at[node][c] == kNone) return c;
    }
    throw std::logic_error("cycle cover colouring ran out of colours");
  };
  auto other = [&](std::size_t e, std::size_t node) { return nodes[e].first == node ? nodes[e].second : nodes[e].first; };

  for (std::size_t e = 0; e < ends.size(); ++e) {
    auto [left, right] = nodes[e];
    std::size_t a = free_colour(left);
    if (at[right][a] != kNone) {
      std::size_t b = free_colour(right);
      // Swap a and b along the alternating path leaving `right` by colour a.
      std::vector<std::size_t> path;
      std::size_t node = right;
      std::size_t want = a;
      while (at[node][want] != kNone) {
        std::size_t f = at[node][want];
        path.push_back(f);
        node = other(f, node);
        want = want == a ? b : a;
      }
      for (auto f : path) {
        at[nodes[f].first][colour[f]] = kNone;
        at[nodes[f].second][colour[f]] = kNone;
      }
      for (auto f : path) {
        colour[f] = colour[f] == a ? b : a;
        at[nodes[f].first][colour[f]] = f;
        at[nodes[f].second][colour[f]] = f;
      }
    }
    colour[e] = a;
    at[left][a] = e;
    at[right][a] = e;
  }

  out.covers.assign(k, {});
  for (std::size_t e = 0; e < real_edges; ++e) out.covers[colour[e]].push_back(edges[e]);
  out.covers.erase(std::remove_if(out.covers.begin(), out.covers.end(), [](const auto& c) { return c.empty(); }),
                   out.covers.end());
  return out;
}

std::vector<CoverComponent> cover_components(const std::vector<Edge>& edges) {
  std::map<BoxId, std::vector<BoxId>> adj;
  for (const auto& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  for (auto& [v, nbrs] : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    if (nbrs.size() > 2) throw std::invalid_argument("vertex '" + v + "' has degree above 2 in a cover");
  }

  std::set<BoxId> seen;
  auto walk = [&](const BoxId& start) {
    std::vector<BoxId> order{start};
    seen.insert(start);
    BoxId cur = start;
    while (true) {
      std::optional<BoxId> next;
      for (const auto& w : adj[cur]) {
        if (!seen.count(w)) {
          next = w;
          break;
        }
      }
      if (!next) break;
      seen.insert(*next);
      order.push_back(*next);
      cur = *next;
    }
    return order;
  };

  std::vector<CoverComponent> out;
  for (const auto& [v, nbrs] : adj) {
    if (nbrs.size() == 1 && !seen.count(v)) out.push_back({walk(v), false});
  }
  for (const auto& [v, nbrs] : adj) {
    if (!seen.count(v)) out.push_back({walk(v), true});
  }
  return out;
}

Layout max_crown_cycles(const ProfitGraph& graph, const std::vector<BoxSpec>& boxes) {
  std::map<BoxId, BoxSpec> by_id;
  for (const auto& b : boxes) {
    if (!by_id.emplace(b.id, b).second) throw DuplicateIdError(b.id);
  }
  for (const auto& v : graph.vertices()) {
    if (!by_id.count(v)) throw MissingBoxError(v);
  }

  auto cover = decompose_cycle_covers(graph);
  const std::vector<Edge>* best = nullptr;
  Rational best_profit = -1;
  for (const auto& c : cover.covers) {
    Rational profit = 0;
    for (const auto& e : c) profit += e.profit;
    if (profit > best_profit) {
      best_profit = profit;
      best = &c;
    }
  }

  std::vector<Layout> parts;
  std::set<BoxId> used;
  if (best) {
    for (const auto& comp : cover_components(*best)) {
      std::vector<BoxSpec> seq;
      for (const auto& id : comp.order) {
        seq.push_back(by_id.at(id));
        used.insert(id);
      }
      parts.push_back(comp.closed ? layout_cycle(seq) : layout_path(seq));
    }
  }
  Layout layout = pack_components(parts);
  std::vector<BoxSpec> rest;
  for (const auto& [id, spec] : by_id) {
    if (!used.count(id)) rest.push_back(spec);
  }
  append_discard_row(layout, rest);
  return layout;
}

}  // namespace crown
