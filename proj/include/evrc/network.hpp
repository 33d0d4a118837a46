#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evrc/instance.hpp"

namespace evrc {

struct ReducedNode {
  NodeId id;
  double pickup_time = 0;       // t_i (0 at v_1, horizon at v_n)
  double charge_rate = kNoCharger;  // g_i, min per kWh
  double charge_price = 0;      // p_i
  double unified_cost = 0;      // c_i: -M_i for requests, c_v at v_1, 0 at v_n
  bool is_request = false;
};

struct ReducedArc {
  int from = 0;
  int to = 0;
  double distance_km = 0;
  double travel_min = 0;   // T_ij = 60 d / speed
  double energy_kwh = 0;   // e_ij = eps * d
};

/// Pickup-time-ordered DAG over {v_1} + requests + {v_n}. Node 0 is the start
/// depot, the last node is the end depot, interior nodes are sorted by
/// (pickup_time, id). Arcs exist for every ordered pair i < j.
class ReducedGraph {
 public:
  ReducedGraph(std::vector<ReducedNode> nodes, std::vector<ReducedArc> arcs,
               std::vector<int> arc_lookup);

  int size() const { return static_cast<int>(nodes_.size()); }
  int request_count() const { return size() - 2; }
  int start() const { return 0; }
  int end() const { return size() - 1; }

  const std::vector<ReducedNode>& nodes() const { return nodes_; }
  const ReducedNode& node(int i) const { return nodes_[static_cast<size_t>(i)]; }
  const std::vector<ReducedArc>& arcs() const { return arcs_; }
  const ReducedArc& arc(int a) const { return arcs_[static_cast<size_t>(a)]; }

  /// Index into arcs() for the ordered pair, -1 when j <= i.
  int arc_index(int from, int to) const;

 private:
  std::vector<ReducedNode> nodes_;
  std::vector<ReducedArc> arcs_;
  std::vector<int> arc_lookup_;  // size*size, row-major
};

using DistanceMatrix = std::vector<std::vector<double>>;

/// Exact shortest directed path lengths between the given terminals; +inf for
/// unreachable pairs, 0 on the diagonal. Rejects negative arc distances.
DistanceMatrix shortest_path_matrix(const RoadNetwork& network,
                                    const std::vector<NodeId>& terminals);

/// Builds G' from an instance and a distance matrix over the terminal order
/// [v_1, requests..., v_n] (instance request order).
ReducedGraph build_reduced_graph(const InstanceSpec& instance, const DistanceMatrix& sp);

/// Convenience overload computing the distance matrix itself.
ReducedGraph build_reduced_graph(const InstanceSpec& instance);

enum class ArcRule : uint8_t {
  Admissible,
  TimeInfeasible,
  EnergyInfeasible,
  Order,  // excluded by the pickup-time ordering itself
};

struct ArcMask {
  std::vector<ArcRule> state;  // parallel to ReducedGraph::arcs()

  bool admissible(int arc) const {
    return state[static_cast<size_t>(arc)] == ArcRule::Admissible;
  }
  int admissible_count() const;
};

/// Charge assumed available at the tail of an arc when testing time
/// feasibility: the head node's mode selects e_ij (conservative) or 0
/// (optimistic).
enum class ChargeMode : uint8_t { Conservative, Optimistic };

/// Time/energy feasibility mask. Arc (i,j) stays admissible iff
///   t_j >= t_i + T_ij + g_i * a(i,j)   and   e_ij <= E_max,
/// where a(i,j) = e_ij when head_mode[j] is Conservative, otherwise 0.
/// The direct depot arc (v_1, v_n) is always kept so routing stays feasible.
ArcMask prune_arcs(const ReducedGraph& graph, const FleetSpec& fleet,
                   const std::vector<ChargeMode>& head_mode);

/// All heads conservative: the two-stage routing rule.
ArcMask prune_conservative(const ReducedGraph& graph, const FleetSpec& fleet);

/// All request heads optimistic (the end depot stays conservative so the
/// horizon can never be overrun by charging).
ArcMask prune_optimistic(const ReducedGraph& graph, const FleetSpec& fleet);

/// Arc-list debug dump: from, to, d, T, e, admissible, reason.
std::string dump_reduced_graph(const ReducedGraph& graph, const ArcMask& mask);

}  // namespace evrc
