#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crown/geometry.hpp"
#include "crown/rational.hpp"

namespace crown {

struct KnapsackItem {
  Rational size;
  Rational value;
};

// Value-scaling FPTAS: returns indices (ascending) of a feasible subset whose
// value is at least (1 - eps) * OPT. Scaled values are floor(v / K) with
// K = eps * v_max / n; sizes are made integral by clearing denominators.
// Throws std::invalid_argument unless 0 < eps < 1.
std::vector<std::size_t> knapsack_fptas(std::span<const KnapsackItem> items, const Rational& capacity,
                                        const Rational& eps);

struct GapBin {
  std::string id;
  Rational capacity;
};

struct GapItem {
  std::string id;
  std::vector<Rational> sizes;   // one per bin
  std::vector<Rational> values;  // one per bin
};

struct GapInstance {
  std::vector<GapBin> bins;
  std::vector<GapItem> items;

  // Throws std::invalid_argument on ragged per-bin vectors, negative sizes or
  // values, or non-positive capacities.
  void validate() const;
};

struct GapAssignment {
  // bin index per item, nullopt when the item is left out
  std::vector<std::optional<std::size_t>> bin_of;

  Rational value(const GapInstance& inst) const;
  bool feasible(const GapInstance& inst) const;
};

class TooLargeError : public CrownError {
 public:
  using CrownError::CrownError;
};

// Sequential per-bin knapsack in bin order. Each bin solves a knapsack over
// the residual values v_b(j) - v_{current bin of j}(j), and items it selects
// move to it. Guarantees value >= ((1 - eps) / (2 - eps)) * OPT.
GapAssignment gap_sequential(const GapInstance& inst, const Rational& eps);

inline constexpr std::size_t kGapExactMaxItems = 12;
inline constexpr std::size_t kGapExactMaxBins = 4;

// Exhaustive optimum. Throws TooLargeError beyond 12 items or 4 bins.
GapAssignment gap_exact(const GapInstance& inst);

}  // namespace crown
