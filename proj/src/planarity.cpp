#include "crown/planarity.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace crown {
namespace {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;

bool planar_edges(std::size_t vertex_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  if (vertex_count >= 3 && edges.size() > 3 * vertex_count - 6) return false;
  BoostGraph g(vertex_count);
  for (const auto& [a, b] : edges) boost::add_edge(a, b, g);
  return boost::boyer_myrvold_planarity_test(g);
}

}  // namespace

bool is_planar(const ProfitGraph& graph) {
  std::map<BoxId, std::size_t> index;
  for (const auto& v : graph.vertices()) index.emplace(v, index.size());
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : graph.edges()) edges.emplace_back(index.at(e.a), index.at(e.b));
  return planar_edges(index.size(), edges);
}

ProfitGraph maximal_planar_subgraph(const ProfitGraph& graph) {
  std::map<BoxId, std::size_t> index;
  for (const auto& v : graph.vertices()) index.emplace(v, index.size());

  auto order = graph.edges();
  std::stable_sort(order.begin(), order.end(), [](const Edge& x, const Edge& y) {
    if (x.profit != y.profit) return x.profit > y.profit;
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });

  std::vector<Edge> kept;
  std::vector<std::pair<std::size_t, std::size_t>> kept_index;
  for (const auto& e : order) {
    kept_index.emplace_back(index.at(e.a), index.at(e.b));
    if (planar_edges(index.size(), kept_index)) {
      kept.push_back(e);
    } else {
      kept_index.pop_back();
    }
  }
  return graph.with_edges(kept);
}

}  // namespace crown
