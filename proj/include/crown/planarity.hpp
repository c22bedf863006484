#pragma once

#include "crown/geometry.hpp"

namespace crown {

class NotPlanarError : public CrownError {
 public:
  using CrownError::CrownError;
};

bool is_planar(const ProfitGraph& graph);

// Greedy maximal planar subgraph: edges by profit descending (ties by id
// pair), each kept iff the kept set stays planar. Keeps every vertex.
ProfitGraph maximal_planar_subgraph(const ProfitGraph& graph);

}  // namespace crown
