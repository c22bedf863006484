#include "crown/gap.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace crown {
namespace {

// Min-size-per-scaled-value dynamic program. `Size` is int64_t when every
// integral size fits comfortably, mpz otherwise.
template <typename Size>
std::vector<std::size_t> scaled_value_dp(const std::vector<Size>& sizes, const std::vector<std::size_t>& scaled,
                                         const Size& capacity, const Size& infinity) {
  const std::size_t n = sizes.size();
  std::size_t total = 0;
  for (auto s : scaled) total += s;

  std::vector<Size> best(total + 1, infinity);
  best[0] = 0;
  std::vector<std::vector<bool>> took(n, std::vector<bool>(total + 1, false));
  std::size_t reach = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t v = scaled[i];
    reach += v;
    for (std::size_t V = reach + 1; V-- > v;) {
      if (best[V - v] == infinity) continue;
      Size candidate = best[V - v] + sizes[i];
      if (candidate < best[V]) {
        best[V] = candidate;
        took[i][V] = true;
      }
    }
  }

  std::size_t answer = 0;
  for (std::size_t V = total + 1; V-- > 0;) {
    if (best[V] != infinity && best[V] <= capacity) {
      answer = V;
      break;
    }
  }

  std::vector<std::size_t> chosen;
  std::size_t V = answer;
  std::size_t upper = n;
  while (V > 0) {
    std::size_t i = upper;
    while (i-- > 0) {
      if (took[i][V]) break;
    }
    chosen.push_back(i);
    V -= scaled[i];
    upper = i;
  }
  return chosen;
}

}  // namespace

std::vector<std::size_t> knapsack_fptas(std::span<const KnapsackItem> items, const Rational& capacity,
                                        const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("knapsack eps must lie in (0, 1)");
  if (capacity < 0) throw std::invalid_argument("knapsack capacity must be non-negative");

  std::vector<std::size_t> eligible;
  std::vector<std::size_t> free_items;  // zero size, positive value
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& it = items[i];
    if (it.size < 0 || it.value < 0) throw std::invalid_argument("knapsack sizes and values must be >= 0");
    if (it.value == 0 || it.size > capacity) continue;
    if (it.size == 0) {
      free_items.push_back(i);
    } else {
      eligible.push_back(i);
    }
  }

  std::vector<std::size_t> result = free_items;
  if (!eligible.empty()) {
    const std::size_t n = eligible.size();
    Rational v_max = 0;
    for (auto i : eligible) v_max = std::max(v_max, items[i].value);
    Rational K = eps * v_max / static_cast<long>(n);

    std::vector<std::size_t> scaled;
    scaled.reserve(n);
    for (auto i : eligible) scaled.push_back(floor(items[i].value / K).get_ui());

    // Clear denominators so the DP runs on integers.
    Integer lcm = capacity.get_den();
    for (auto i : eligible) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), items[i].size.get_den_mpz_t());
    Integer cap_int = floor(capacity * lcm);
    std::vector<Integer> sizes_int;
    sizes_int.reserve(n);
    Integer size_sum = 0;
    for (auto i : eligible) {
      sizes_int.push_back(floor(items[i].size * lcm));
      size_sum += sizes_int.back();
    }

    std::vector<std::size_t> local;
    const Integer limit = Integer(std::numeric_limits<std::int64_t>::max() / 4);
    if (size_sum < limit && cap_int < limit) {
      std::vector<std::int64_t> sizes;
      sizes.reserve(n);
      for (const auto& s : sizes_int) sizes.push_back(s.get_si());
      local = scaled_value_dp<std::int64_t>(sizes, scaled, cap_int.get_si(),
                                            std::numeric_limits<std::int64_t>::max() / 2);
    } else {
      Integer infinity = size_sum + cap_int + 1;
      local = scaled_value_dp<Integer>(sizes_int, scaled, cap_int, infinity);
    }
    for (auto j : local) result.push_back(eligible[j]);
  }
  std::sort(result.begin(), result.end());
  return result;
}

// ---------------------------------------------------------------------------

void GapInstance::validate() const {
  for (const auto& b : bins) {
    if (b.capacity <= 0) throw std::invalid_argument("bin '" + b.id + "' needs a positive capacity");
  }
  for (const auto& it : items) {
    if (it.sizes.size() != bins.size() || it.values.size() != bins.size()) {
      throw std::invalid_argument("item '" + it.id + "' needs one size and one value per bin");
    }
    for (std::size_t b = 0; b < bins.size(); ++b) {
      if (it.sizes[b] < 0 || it.values[b] < 0) {
        throw std::invalid_argument("item '" + it.id + "' has a negative size or value");
      }
    }
  }
}

Rational GapAssignment::value(const GapInstance& inst) const {
  Rational sum = 0;
  for (std::size_t j = 0; j < bin_of.size(); ++j) {
    if (bin_of[j]) sum += inst.items[j].values[*bin_of[j]];
  }
  return sum;
}

bool GapAssignment::feasible(const GapInstance& inst) const {
  if (bin_of.size() != inst.items.size()) return false;
  std::vector<Rational> load(inst.bins.size(), 0);
  for (std::size_t j = 0; j < bin_of.size(); ++j) {
    if (!bin_of[j]) continue;
    if (*bin_of[j] >= inst.bins.size()) return false;
    load[*bin_of[j]] += inst.items[j].sizes[*bin_of[j]];
  }
  for (std::size_t b = 0; b < load.size(); ++b) {
    if (load[b] > inst.bins[b].capacity) return false;
  }
  return true;
}

GapAssignment gap_sequential(const GapInstance& inst, const Rational& eps) {
  inst.validate();
  GapAssignment out;
  out.bin_of.assign(inst.items.size(), std::nullopt);

  for (std::size_t b = 0; b < inst.bins.size(); ++b) {
    std::vector<KnapsackItem> sub;
    std::vector<std::size_t> origin;
    for (std::size_t j = 0; j < inst.items.size(); ++j) {
      const auto& it = inst.items[j];
      Rational residual = it.values[b];
      if (out.bin_of[j]) residual -= it.values[*out.bin_of[j]];
      if (residual <= 0 || it.sizes[b] > inst.bins[b].capacity) continue;
      sub.push_back({it.sizes[b], residual});
      origin.push_back(j);
    }
    for (auto k : knapsack_fptas(sub, inst.bins[b].capacity, eps)) out.bin_of[origin[k]] = b;
  }
  return out;
}

GapAssignment gap_exact(const GapInstance& inst) {
  inst.validate();
  if (inst.items.size() > kGapExactMaxItems || inst.bins.size() > kGapExactMaxBins) {
    throw TooLargeError("gap_exact supports at most 12 items and 4 bins");
  }
  const std::size_t n = inst.items.size();
  const std::size_t m = inst.bins.size();

  // Optimistic bound: every remaining item at its best value.
  std::vector<Rational> suffix_bound(n + 1, 0);
  for (std::size_t j = n; j-- > 0;) {
    Rational best = 0;
    for (std::size_t b = 0; b < m; ++b) {
      if (inst.items[j].sizes[b] <= inst.bins[b].capacity) best = std::max(best, inst.items[j].values[b]);
    }
    suffix_bound[j] = suffix_bound[j + 1] + best;
  }

  std::vector<Rational> remaining(m);
  for (std::size_t b = 0; b < m; ++b) remaining[b] = inst.bins[b].capacity;
  std::vector<std::optional<std::size_t>> current(n), best(n);
  Rational best_value = -1;
  Rational value = 0;

  auto recurse = [&](auto&& self, std::size_t j) -> void {
    if (value + suffix_bound[j] <= best_value) return;
    if (j == n) {
      best_value = value;
      best = current;
      return;
    }
    current[j] = std::nullopt;
    self(self, j + 1);
    for (std::size_t b = 0; b < m; ++b) {
      const auto& size = inst.items[j].sizes[b];
      if (size > remaining[b]) continue;
      remaining[b] -= size;
      value += inst.items[j].values[b];
      current[j] = b;
      self(self, j + 1);
      current[j] = std::nullopt;
      value -= inst.items[j].values[b];
      remaining[b] += size;
    }
  };
  recurse(recurse, 0);
  return GapAssignment{best};
}

}  // namespace crown
