#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "evrc/instance.hpp"
#include "evrc/network.hpp"

namespace evrc::testing {

/// All-pairs shortest paths by Floyd-Warshall, independent of the library's
/// per-terminal Dijkstra.
inline std::vector<std::vector<double>> floyd_warshall(const RoadNetwork& network) {
  const size_t n = network.nodes.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, kInf));
  std::map<NodeId, size_t> index;
  for (size_t i = 0; i < n; ++i) {
    index[network.nodes[i].id] = i;
    dist[i][i] = 0;
  }
  for (const auto& arc : network.arcs) {
    auto& cell = dist[index.at(arc.from)][index.at(arc.to)];
    cell = std::min(cell, arc.distance_km);
  }
  for (size_t k = 0; k < n; ++k) {
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        if (dist[i][k] + dist[k][j] < dist[i][j]) dist[i][j] = dist[i][k] + dist[k][j];
      }
    }
  }
  return dist;
}

/// Minimum routing-stage cost over every integral route set, by brute force:
/// each request is assigned to one of k vehicles or left unserved, vehicles
/// visit their requests in graph order. Costs replicate the flow encoding's
/// integer scaling arc by arc.
inline std::int64_t enumerate_flow_cost(const ReducedGraph& graph, const ArcMask& mask,
                                        const Weights& weights, const FleetSpec& fleet,
                                        double cost_scale, bool idle_free = false) {
  const int requests = graph.request_count();
  const int k = fleet.count;

  auto arc_cost = [&](int from, int to) -> std::int64_t {
    const int a = graph.arc_index(from, to);
    if (a < 0 || !mask.admissible(a)) return std::numeric_limits<std::int64_t>::min();
    double unified = graph.node(from).unified_cost;
    if (idle_free && from == graph.start() && to == graph.end()) unified = 0;
    const double cost =
        weights.travel_time * graph.arc(a).travel_min + weights.usage * unified;
    return static_cast<std::int64_t>(std::llround(cost / cost_scale));
  };

  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<int> last(static_cast<size_t>(k), graph.start());
  std::vector<std::int64_t> cost(static_cast<size_t>(k), 0);

  auto close_all = [&]() -> std::int64_t {
    std::int64_t total = 0;
    for (int v = 0; v < k; ++v) {
      const std::int64_t leg = arc_cost(last[static_cast<size_t>(v)], graph.end());
      if (leg == std::numeric_limits<std::int64_t>::min()) {
        return std::numeric_limits<std::int64_t>::max();
      }
      total += cost[static_cast<size_t>(v)] + leg;
    }
    return total;
  };

  auto rec = [&](auto&& self, int request) -> void {
    if (request == requests) {
      const std::int64_t total = close_all();
      if (total < best) best = total;
      return;
    }
    const int node = request + 1;
    bool tried_idle = false;
    for (int v = 0; v < k; ++v) {
      if (last[static_cast<size_t>(v)] == graph.start()) {
        if (tried_idle) continue;  // idle vehicles are interchangeable
        tried_idle = true;
      }
      const std::int64_t leg = arc_cost(last[static_cast<size_t>(v)], node);
      if (leg == std::numeric_limits<std::int64_t>::min()) continue;
      const int saved = last[static_cast<size_t>(v)];
      last[static_cast<size_t>(v)] = node;
      cost[static_cast<size_t>(v)] += leg;
      self(self, request + 1);
      cost[static_cast<size_t>(v)] -= leg;
      last[static_cast<size_t>(v)] = saved;
    }
    self(self, request + 1);  // unserved
  };
  rec(rec, 0);
  return best;
}

}  // namespace evrc::testing
