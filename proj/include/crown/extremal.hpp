#pragma once

#include <optional>
#include <vector>

#include "crown/geometry.hpp"

namespace crown {

class TooFewBoxesError : public CrownError {
 public:
  using CrownError::CrownError;
};

class InvalidInstanceError : public CrownError {
 public:
  using CrownError::CrownError;
};

// Arrangement with 2n - 2 contacts for n >= 4 (2n - 3 for n = 2, 3). Four
// boxes meet at a common corner; the rest extend a two-channel row along the
// horizontal line through that corner, each touching its channel predecessor
// and one box across the line. Orders that would create extra corner contacts
// are avoided where possible; the count is checked by recounting contacts.
// Throws TooFewBoxesError for n < 2.
Layout place_extremal(const std::vector<BoxSpec>& boxes);

// Squares of sides 2, 4, ..., 2^n with ids s1..sn.
std::vector<BoxSpec> gen_power_squares(int n);

struct GadgetInstance {
  std::vector<BoxSpec> boxes;
  ProfitGraph graph;
  std::optional<Layout> witness;
};

// Star with center (B/2, delta), delta = min a_i / 2, four (B, B) squares
// and one (a_i, a_i) square per value. `top` (indices of one half) selects
// the witness; without it a balanced half is searched for. No witness is
// emitted when none exists.
GadgetInstance gen_partition_star_instance(const std::vector<long>& values,
                                           const std::optional<std::vector<std::size_t>>& top = std::nullopt);

// Tree T_S for a 3-Partition instance: |S| = 3m, sum S = mB, B/4 < s < B/2.
// `groups` (triples of indices into S, each summing to B) selects the
// witness; without it one is searched for. Throws InvalidInstanceError when the preconditions fail.
GadgetInstance gen_3partition_tree_instance(const std::vector<long>& values, long m, long bound,
                                            const std::optional<std::vector<std::vector<std::size_t>>>& groups =
                                                std::nullopt);

}  // namespace crown
