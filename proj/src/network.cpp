#include "evrc/network.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>

#include "evrc/error.hpp"

namespace evrc {

ReducedGraph::ReducedGraph(std::vector<ReducedNode> nodes, std::vector<ReducedArc> arcs,
                           std::vector<int> arc_lookup)
    : nodes_(std::move(nodes)), arcs_(std::move(arcs)), arc_lookup_(std::move(arc_lookup)) {}

int ReducedGraph::arc_index(int from, int to) const {
  return arc_lookup_[static_cast<size_t>(from) * nodes_.size() + static_cast<size_t>(to)];
}

int ArcMask::admissible_count() const {
  return static_cast<int>(std::count(state.begin(), state.end(), ArcRule::Admissible));
}

DistanceMatrix shortest_path_matrix(const RoadNetwork& network,
                                    const std::vector<NodeId>& terminals) {
  const size_t t = terminals.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::map<NodeId, int> index;
  for (size_t i = 0; i < network.nodes.size(); ++i) {
    index[network.nodes[i].id] = static_cast<int>(i);
  }
  for (const auto& id : terminals) {
    require(index.count(id) > 0, ErrorKind::Validation,
            "shortest paths: unknown terminal '" + id + "'");
  }

  DistanceMatrix result(t, std::vector<double>(t, kInf));

  if (network.euclidean()) {
    for (size_t i = 0; i < t; ++i) {
      const NetworkNode& a = *network.find(terminals[i]);
      for (size_t j = 0; j < t; ++j) {
        const NetworkNode& b = *network.find(terminals[j]);
        result[i][j] = std::hypot(a.x - b.x, a.y - b.y);
      }
    }
    return result;
  }

  std::vector<std::vector<std::pair<int, double>>> adjacency(network.nodes.size());
  for (const auto& arc : network.arcs) {
    require(arc.distance_km >= 0, ErrorKind::Validation,
            "shortest paths: negative arc distance on (" + arc.from + ", " + arc.to + ")");
    adjacency[static_cast<size_t>(index.at(arc.from))].push_back(
        {index.at(arc.to), arc.distance_km});
  }

  // Dijkstra from each terminal.
  for (size_t s = 0; s < t; ++s) {
    std::vector<double> dist(network.nodes.size(), kInf);
    const int source = index.at(terminals[s]);
    dist[static_cast<size_t>(source)] = 0;
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.push({0.0, source});
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[static_cast<size_t>(u)]) continue;
      for (const auto& [v, w] : adjacency[static_cast<size_t>(u)]) {
        if (d + w < dist[static_cast<size_t>(v)]) {
          dist[static_cast<size_t>(v)] = d + w;
          heap.push({d + w, v});
        }
      }
    }
    for (size_t j = 0; j < t; ++j) {
      result[s][j] = dist[static_cast<size_t>(index.at(terminals[j]))];
    }
  }
  return result;
}

ReducedGraph build_reduced_graph(const InstanceSpec& instance, const DistanceMatrix& sp) {
  const int r = static_cast<int>(instance.requests.size());
  const int n = r + 2;
  require(static_cast<int>(sp.size()) == n, ErrorKind::Internal,
          "reduced graph: distance matrix does not cover all terminals");

  // Terminal order in sp: [v_1, requests..., v_n].
  struct Entry {
    ReducedNode node;
    int sp_index;
  };
  std::vector<Entry> interior;
  for (int i = 0; i < r; ++i) {
    const RequestSpec& request = instance.requests[static_cast<size_t>(i)];
    ReducedNode node;
    node.id = request.node;
    node.pickup_time = request.pickup_time;
    node.charge_rate = request.charge_rate;
    node.charge_price = request.charge_price;
    node.unified_cost = -request.revenue;
    node.is_request = true;
    interior.push_back({node, i + 1});
  }
  std::stable_sort(interior.begin(), interior.end(), [](const Entry& a, const Entry& b) {
    if (a.node.pickup_time != b.node.pickup_time) {
      return a.node.pickup_time < b.node.pickup_time;
    }
    return a.node.id < b.node.id;
  });

  std::vector<ReducedNode> nodes;
  std::vector<int> sp_index;
  ReducedNode start;
  start.id = instance.start_depot;
  start.pickup_time = 0;
  start.charge_rate = instance.depot_charge_rate;
  start.charge_price = instance.depot_charge_price;
  start.unified_cost = instance.fleet.usage_fee;
  nodes.push_back(start);
  sp_index.push_back(0);
  for (const auto& entry : interior) {
    nodes.push_back(entry.node);
    sp_index.push_back(entry.sp_index);
  }
  ReducedNode end;
  end.id = instance.end_depot;
  end.pickup_time = instance.horizon;
  end.charge_rate = kNoCharger;
  end.charge_price = 0;
  end.unified_cost = 0;
  nodes.push_back(end);
  sp_index.push_back(n - 1);

  const double speed = instance.fleet.speed_km_per_h;
  const double eps = instance.fleet.consumption_kwh_per_km;

  std::vector<ReducedArc> arcs;
  std::vector<int> lookup(static_cast<size_t>(n) * static_cast<size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = sp[static_cast<size_t>(sp_index[static_cast<size_t>(i)])]
                         [static_cast<size_t>(sp_index[static_cast<size_t>(j)])];
      if (!std::isfinite(d)) {
        // Reachability matters only for legs the model can use.
        if (i == 0 || j == n - 1) {
          const NodeId& culprit = i == 0 ? nodes[static_cast<size_t>(j)].id
                                         : nodes[static_cast<size_t>(i)].id;
          fail(ErrorKind::Validation,
               "reduced graph: node '" + culprit + "' is disconnected from the depots");
        }
        continue;
      }
      ReducedArc arc;
      arc.from = i;
      arc.to = j;
      arc.distance_km = d;
      arc.travel_min = 60.0 * d / speed;
      arc.energy_kwh = eps * d;
      lookup[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] =
          static_cast<int>(arcs.size());
      arcs.push_back(arc);
    }
  }
  return ReducedGraph(std::move(nodes), std::move(arcs), std::move(lookup));
}

ReducedGraph build_reduced_graph(const InstanceSpec& instance) {
  std::vector<NodeId> terminals;
  terminals.push_back(instance.start_depot);
  for (const auto& request : instance.requests) terminals.push_back(request.node);
  terminals.push_back(instance.end_depot);
  return build_reduced_graph(instance, shortest_path_matrix(instance.network, terminals));
}

ArcMask prune_arcs(const ReducedGraph& graph, const FleetSpec& fleet,
                   const std::vector<ChargeMode>& head_mode) {
  require(static_cast<int>(head_mode.size()) == graph.size(), ErrorKind::Internal,
          "prune_arcs: mode vector does not match graph");

  ArcMask mask;
  mask.state.resize(graph.arcs().size(), ArcRule::Admissible);
  for (size_t a = 0; a < graph.arcs().size(); ++a) {
    const ReducedArc& arc = graph.arcs()[a];
    if (arc.from == graph.start() && arc.to == graph.end()) {
      continue;  // retained so all K flow units stay routable
    }
    if (arc.energy_kwh > fleet.battery_kwh) {
      mask.state[a] = ArcRule::EnergyInfeasible;
      continue;
    }
    const ReducedNode& tail = graph.node(arc.from);
    const ReducedNode& head = graph.node(arc.to);
    const double assumed =
        head_mode[static_cast<size_t>(arc.to)] == ChargeMode::Conservative ? arc.energy_kwh : 0.0;
    // g_i * 0 is zero charging time even at charger-less nodes.
    const double charge_min = assumed > 0 ? tail.charge_rate * assumed : 0.0;
    if (head.pickup_time < tail.pickup_time + arc.travel_min + charge_min) {
      mask.state[a] = ArcRule::TimeInfeasible;
    }
  }
  return mask;
}

ArcMask prune_conservative(const ReducedGraph& graph, const FleetSpec& fleet) {
  std::vector<ChargeMode> mode(static_cast<size_t>(graph.size()), ChargeMode::Conservative);
  return prune_arcs(graph, fleet, mode);
}

ArcMask prune_optimistic(const ReducedGraph& graph, const FleetSpec& fleet) {
  std::vector<ChargeMode> mode(static_cast<size_t>(graph.size()), ChargeMode::Optimistic);
  mode[static_cast<size_t>(graph.end())] = ChargeMode::Conservative;
  return prune_arcs(graph, fleet, mode);
}

std::string dump_reduced_graph(const ReducedGraph& graph, const ArcMask& mask) {
  std::ostringstream out;
  out << "from\tto\td_km\tT_min\te_kwh\tadmissible\treason\n";
  auto reason = [](ArcRule rule) {
    switch (rule) {
      case ArcRule::Admissible:
        return "-";
      case ArcRule::TimeInfeasible:
        return "time-infeasible";
      case ArcRule::EnergyInfeasible:
        return "energy-infeasible";
      case ArcRule::Order:
        return "order";
    }
    return "-";
  };
  for (size_t a = 0; a < graph.arcs().size(); ++a) {
    const ReducedArc& arc = graph.arcs()[a];
    out << graph.node(arc.from).id << '\t' << graph.node(arc.to).id << '\t' << arc.distance_km
        << '\t' << arc.travel_min << '\t' << arc.energy_kwh << '\t'
        << (mask.state[a] == ArcRule::Admissible ? "yes" : "no") << '\t'
        << reason(mask.state[a]) << '\n';
  }
  return out.str();
}

}  // namespace evrc
