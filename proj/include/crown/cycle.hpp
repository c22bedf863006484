#pragma once

#include <vector>

#include "crown/geometry.hpp"

namespace crown {

class CycleTooShortError : public CrownError {
 public:
  using CrownError::CrownError;
};

// A connected piece of a cover: a simple cycle (closed) or a simple path.
struct CoverComponent {
  std::vector<BoxId> order;
  bool closed = false;
};

struct CycleCover {
  std::vector<std::vector<Edge>> covers;
};

// Cycle v_1..v_n (n >= 3) laid out on two channels around the line y = 0.
Layout layout_cycle(const std::vector<BoxSpec>& cycle);

// Boxes side by side from x = 0 with bottoms on y = 0.
Layout layout_path(const std::vector<BoxSpec>& path);

// Partitions the edges into at most ceil(max_degree / 2) sets, each of
// maximum degree 2. Odd-degree vertices are joined to one dummy vertex per
// component, the result is oriented along closed trails, and the bipartite
// out/in graph is edge-coloured with ceil(max_degree / 2) colours.
CycleCover decompose_cycle_covers(const ProfitGraph& graph);

// Splits an edge set of maximum degree 2 into paths (from their smaller end)
// followed by cycles (from their smallest vertex, towards its smaller
// neighbour).
std::vector<CoverComponent> cover_components(const std::vector<Edge>& edges);

// Lays out the most profitable cover; other boxes go to a discard row.
Layout max_crown_cycles(const ProfitGraph& graph, const std::vector<BoxSpec>& boxes);

}  // namespace crown
