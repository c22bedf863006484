#include "crown/extremal.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace crown {
namespace {

// B1 north-west, B2 south-west, B3 north-east, B4 south-east of the origin.
void place_corners(Layout& layout, const BoxSpec* b1, const BoxSpec* b2, const BoxSpec* b3, const BoxSpec* b4) {
  if (b1) layout.place(*b1, -b1->width, 0);
  if (b2) layout.place(*b2, -b2->width, -b2->height);
  if (b3) layout.place(*b3, 0, 0);
  if (b4) layout.place(*b4, 0, -b4->height);
}

// Extends the top channel (after b3) and the bottom channel (after b4),
// always growing the shorter one, preferring boxes whose right end does not
// coincide with a break point of the other channel.
Layout build_channels(const BoxSpec& b1, const BoxSpec& b2, const BoxSpec& b3, const BoxSpec& b4,
                      std::vector<const BoxSpec*> rest) {
  Layout layout;
  place_corners(layout, &b1, &b2, &b3, &b4);
  std::set<Rational> top_breaks{0, b3.width};
  std::set<Rational> bottom_breaks{0, b4.width};
  Rational top = b3.width;
  Rational bottom = b4.width;
  while (!rest.empty()) {
    bool on_top = top <= bottom;
    const Rational& start = on_top ? top : bottom;
    const auto& other = on_top ? bottom_breaks : top_breaks;
    std::size_t pick = 0;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (!other.count(start + rest[i]->width)) {
        pick = i;
        break;
      }
    }
    const BoxSpec& b = *rest[pick];
    rest.erase(rest.begin() + static_cast<long>(pick));
    if (on_top) {
      layout.place(b, top, 0);
      top += b.width;
      top_breaks.insert(top);
    } else {
      layout.place(b, bottom, -b.height);
      bottom += b.width;
      bottom_breaks.insert(bottom);
    }
  }
  return layout;
}

// Indices of the two largest keys (ties by position).
template <typename Key>
std::pair<std::size_t, std::size_t> two_largest(const std::vector<std::size_t>& idx, Key key) {
  std::vector<std::size_t> sorted = idx;
  std::stable_sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) { return key(a) > key(b); });
  return {sorted[0], sorted[1]};
}

// Backtracking over the smallest unused element.
bool extend_triples(const std::vector<long>& values, long bound, std::vector<bool>& used,
                    std::vector<std::vector<std::size_t>>& groups) {
  auto first = std::find(used.begin(), used.end(), false);
  if (first == used.end()) return true;
  std::size_t i = static_cast<std::size_t>(first - used.begin());
  used[i] = true;
  for (std::size_t j = i + 1; j < values.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    for (std::size_t k = j + 1; k < values.size(); ++k) {
      if (used[k] || values[i] + values[j] + values[k] != bound) continue;
      used[k] = true;
      groups.push_back({i, j, k});
      if (extend_triples(values, bound, used, groups)) return true;
      groups.pop_back();
      used[k] = false;
    }
    used[j] = false;
  }
  used[i] = false;
  return false;
}

std::optional<std::vector<std::vector<std::size_t>>> find_triples(const std::vector<long>& values, long bound) {
  std::vector<bool> used(values.size(), false);
  std::vector<std::vector<std::size_t>> groups;
  if (extend_triples(values, bound, used, groups)) return groups;
  return std::nullopt;
}

}  // namespace

Layout place_extremal(const std::vector<BoxSpec>& boxes) {
  validate_boxes(boxes);
  const std::size_t n = boxes.size();
  if (n < 2) throw TooFewBoxesError("place_extremal needs at least 2 boxes, got " + std::to_string(n));

  Layout layout;
  if (n == 2) {
    layout.place(boxes[0], 0, 0);
    layout.place(boxes[1], boxes[0].width, 0);
    return layout;
  }

  std::vector<std::size_t> head(std::min<std::size_t>(n, 5));
  std::iota(head.begin(), head.end(), 0);
  auto [i1, i2] = two_largest(head, [&](std::size_t i) { return boxes[i].height; });
  std::vector<std::size_t> others;
  for (auto i : head) {
    if (i != i1 && i != i2) others.push_back(i);
  }

  if (n == 3) {
    place_corners(layout, &boxes[i1], &boxes[i2], &boxes[others[0]], nullptr);
    return layout;
  }
  if (n == 4) {
    place_corners(layout, &boxes[i1], &boxes[i2], &boxes[others[0]], &boxes[others[1]]);
    return layout;
  }

  // B3, B4: widest two of the remaining three first; other pairs and
  // orientations as fallbacks.
  auto [i3, i4] = two_largest(others, [&](std::size_t i) { return boxes[i].width; });
  std::vector<std::pair<std::size_t, std::size_t>> pairs{{i3, i4}, {i4, i3}};
  for (std::size_t a = 0; a < others.size(); ++a) {
    for (std::size_t b = 0; b < others.size(); ++b) {
      if (a == b) continue;
      std::pair<std::size_t, std::size_t> p{others[a], others[b]};
      if (std::find(pairs.begin(), pairs.end(), p) == pairs.end()) pairs.push_back(p);
    }
  }

  const std::size_t target = 2 * n - 2;
  std::optional<Layout> best;
  std::size_t best_count = 0;
  std::mt19937_64 rng(0x5eed);
  constexpr int kShuffles = 64;
  for (int attempt = 0; attempt <= kShuffles; ++attempt) {
    for (const auto& [a, b] : pairs) {
      std::vector<const BoxSpec*> rest;
      for (auto i : others) {
        if (i != a && i != b) rest.push_back(&boxes[i]);
      }
      for (std::size_t i = 5; i < n; ++i) rest.push_back(&boxes[i]);
      if (attempt > 0) std::shuffle(rest.begin(), rest.end(), rng);

      Layout candidate = build_channels(boxes[i1], boxes[i2], boxes[a], boxes[b], rest);
      std::size_t count = detect_contacts(candidate).size();
      if (count == target) return candidate;
      if (!best || count < best_count) {
        best_count = count;
        best = std::move(candidate);
      }
    }
  }
  return *best;
}

std::vector<BoxSpec> gen_power_squares(int n) {
  if (n < 1) throw std::invalid_argument("gen_power_squares needs n >= 1");
  std::vector<BoxSpec> out;
  Integer side = 1;
  for (int i = 1; i <= n; ++i) {
    side *= 2;
    out.push_back({"s" + std::to_string(i), Rational(side), Rational(side), ""});
  }
  return out;
}

GadgetInstance gen_partition_star_instance(const std::vector<long>& values,
                                           const std::optional<std::vector<std::size_t>>& top) {
  if (values.empty()) throw InvalidInstanceError("partition instance needs at least one value");
  long total = 0;
  long smallest = values[0];
  for (auto a : values) {
    if (a <= 0) throw InvalidInstanceError("partition values must be positive");
    total += a;
    smallest = std::min(smallest, a);
  }
  if (total % 2 != 0) throw InvalidInstanceError("partition values must have an even sum");
  const Rational B(total);
  const Rational delta = Rational(smallest) / 2;

  GadgetInstance out;
  BoxSpec center{"center", B / 2, delta, ""};
  out.boxes.push_back(center);
  for (int k = 1; k <= 4; ++k) out.boxes.push_back({"big" + std::to_string(k), B, B, ""});
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.boxes.push_back({"a" + std::to_string(i + 1), Rational(values[i]), Rational(values[i]), ""});
  }
  for (std::size_t k = 1; k < out.boxes.size(); ++k) out.graph.set_profit(center.id, out.boxes[k].id, 1);

  std::optional<std::vector<bool>> upper;
  if (top) {
    upper = std::vector<bool>(values.size(), false);
    long sum = 0;
    for (auto i : *top) {
      if (i >= values.size() || (*upper)[i]) throw InvalidInstanceError("partition half has a bad index");
      (*upper)[i] = true;
      sum += values[i];
    }
    if (2 * sum != total) throw InvalidInstanceError("supplied half does not sum to B/2");
  } else if (total % 2 == 0) {
    // Subset-sum table over prefixes, then walk back.
    const long half = total / 2;
    std::vector<std::vector<bool>> reach(values.size() + 1, std::vector<bool>(half + 1, false));
    reach[0][0] = true;
    for (std::size_t i = 0; i < values.size(); ++i) {
      for (long s = 0; s <= half; ++s) {
        reach[i + 1][s] = reach[i][s] || (s >= values[i] && reach[i][s - values[i]]);
      }
    }
    if (reach[values.size()][half]) {
      upper = std::vector<bool>(values.size(), false);
      long s = half;
      for (std::size_t i = values.size(); i-- > 0;) {
        if (!reach[i][s]) {
          (*upper)[i] = true;
          s -= values[i];
        }
      }
    }
  }

  if (upper) {
    Layout w;
    w.place(center, 0, 0);
    Rational above = 0;
    Rational below = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const BoxSpec& sq = out.boxes[5 + i];
      if ((*upper)[i]) {
        w.place(sq, above, delta);
        above += sq.width;
      } else {
        w.place(sq, below, -sq.height);
        below += sq.width;
      }
    }
    w.place(out.boxes[1], -B, delta - B);
    w.place(out.boxes[2], -B, delta);
    w.place(out.boxes[3], B / 2, 0);
    w.place(out.boxes[4], B / 2, -B);
    out.witness = std::move(w);
  }
  return out;
}

GadgetInstance gen_3partition_tree_instance(const std::vector<long>& values, long m, long bound,
                                            const std::optional<std::vector<std::vector<std::size_t>>>& given) {
  if (m < 1) throw InvalidInstanceError("3-partition needs m >= 1");
  if (values.size() != static_cast<std::size_t>(3 * m)) throw InvalidInstanceError("3-partition needs |S| = 3m");
  long total = 0;
  for (auto s : values) {
    if (!(4 * s > bound && 2 * s < bound)) {
      throw InvalidInstanceError("element " + std::to_string(s) + " is outside (B/4, B/2)");
    }
    total += s;
  }
  if (total != m * bound) throw InvalidInstanceError("3-partition needs sum S = mB");

  const Rational B(bound);
  const Rational K = Rational((m + 1) * bound + m + 1);
  const Rational half(1, 2);

  GadgetInstance out;
  auto add = [&](const std::string& id, const Rational& w, const Rational& h) {
    out.boxes.push_back({id, w, h, ""});
    return out.boxes.size() - 1;
  };
  std::size_t c = add("c", K, half);
  for (std::size_t i = 0; i < values.size(); ++i) add("v" + std::to_string(i + 1), Rational(values[i]), B);
  for (long j = 0; j <= m; ++j) {
    std::string s = std::to_string(j);
    add("u" + s, 1, B);
    add("b" + s, 1, B);
    add("l" + s, B / 2, B);
    add("r" + s, B / 2, B);
  }
  for (int k = 1; k <= 5; ++k) add("a" + std::to_string(k), K, K);
  add("d1", B / 2, B);
  add("d2", B / 2, B);

  const std::string cid = out.boxes[c].id;
  for (const auto& b : out.boxes) {
    const auto& id = b.id;
    if (id == cid) continue;
    if (id[0] == 'v' || id[0] == 'u' || id[0] == 'a' || id[0] == 'd') out.graph.set_profit(cid, id, 1);
  }
  for (long j = 0; j <= m; ++j) {
    std::string s = std::to_string(j);
    for (const auto& p : {"b", "l", "r"}) out.graph.set_profit("u" + s, p + s, 1);
  }

  std::optional<std::vector<std::vector<std::size_t>>> groups = given;
  if (!groups) groups = find_triples(values, bound);
  if (!groups) return out;
  if (groups->size() != static_cast<std::size_t>(m)) throw InvalidInstanceError("expected m groups");
  std::vector<bool> used(values.size(), false);
  for (const auto& g : *groups) {
    long sum = 0;
    if (g.size() != 3) throw InvalidInstanceError("every group needs three elements");
    for (auto i : g) {
      if (i >= values.size() || used[i]) throw InvalidInstanceError("groups must partition S");
      used[i] = true;
      sum += values[i];
    }
    if (sum != bound) throw InvalidInstanceError("a group does not sum to B");
  }

  std::map<BoxId, BoxSpec> by_id;
  for (const auto& b : out.boxes) by_id.emplace(b.id, b);
  Layout w;
  w.place(by_id.at("c"), 0, 0);
  w.place(by_id.at("a1"), 0, half);
  w.place(by_id.at("a2"), -K, 0);
  w.place(by_id.at("a3"), K, 0);
  w.place(by_id.at("a4"), -K, -K);
  w.place(by_id.at("a5"), K, -K);

  Rational x = 0;
  auto below_c = [&](const BoxSpec& b) {
    w.place(b, x, -B);
    x += b.width;
  };
  auto under_u = [&](long j, const Rational& ux) {
    std::string s = std::to_string(j);
    w.place(by_id.at("l" + s), ux - B / 2, -2 * B);
    w.place(by_id.at("b" + s), ux, -2 * B);
    w.place(by_id.at("r" + s), ux + 1, -2 * B);
  };
  below_c(by_id.at("d1"));
  for (long j = 0; j <= m; ++j) {
    under_u(j, x);
    below_c(by_id.at("u" + std::to_string(j)));
    if (j < m) {
      for (auto i : (*groups)[static_cast<std::size_t>(j)]) below_c(by_id.at("v" + std::to_string(i + 1)));
    }
  }
  below_c(by_id.at("d2"));
  out.witness = std::move(w);
  return out;
}

}  // namespace crown
