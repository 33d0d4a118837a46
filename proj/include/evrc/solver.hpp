#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evrc/charging.hpp"
#include "evrc/mcf.hpp"
#include "evrc/network.hpp"

namespace evrc {

struct SolveConfig {
  bool idle_free = false;
  /// Whether the pickup-time violation check also covers arcs leaving the
  /// start depot (default) or only arcs between requests.
  bool phi_depot_arcs = true;
  double cost_scale = 1e-6;
  std::optional<Weights> weight_override;
};

struct ObjectiveBreakdown {
  double charge_time = 0;    // w1 * sum r_i g_i
  double charge_cost = 0;    // w2 * sum r_i p_i
  double travel_time = 0;    // w3 * sum T_ij
  double usage_revenue = 0;  // w4 * sum c_i

  double total() const { return charge_time + charge_cost + travel_time + usage_revenue; }
};

struct IterationStats {
  std::int64_t flow_cost = 0;  // routing-stage cost at the integer scale
  int served = 0;
  std::vector<NodeId> violated;  // cumulative violated set after this pass
};

struct Solution {
  enum class Method { Tlp, Ilp, Oracle };

  Method method = Method::Tlp;
  std::vector<Route> routes;          // indices into the deterministic rebuild of G'
  std::vector<ChargingPlan> plans;    // parallel to routes
  std::vector<std::vector<NodeId>> route_ids;
  ObjectiveBreakdown objective;
  std::vector<NodeId> served;         // sorted request node ids
  int iterations = 1;                 // q
  std::vector<NodeId> final_violated;
  std::vector<IterationStats> iteration_stats;
  double wall_ms = 0;
  double cost_scale = 1e-6;
  std::uint64_t candidates_explored = 0;  // oracle diagnostics

  static const char* method_name(Method m) {
    switch (m) {
      case Method::Tlp: return "tlp";
      case Method::Ilp: return "ilp";
      case Method::Oracle: return "oracle";
    }
    return "?";
  }
};

/// Objective terms over fixed routes and plans. With idle_free the usage fee
/// on direct v_1 -> v_n routes is dropped, mirroring the routing stage flag.
ObjectiveBreakdown compute_objective(const std::vector<Route>& routes,
                                     const std::vector<ChargingPlan>& plans,
                                     const ReducedGraph& graph, const Weights& weights,
                                     bool idle_free = false);

/// Requests j whose pickup time is overrun by the actual plan:
/// T_ij + g_i r_i + t_i - t_j > 0 on a traversed arc (i, j). Returns reduced
/// node indices in graph order.
std::vector<int> violation_check(const std::vector<Route>& routes,
                                 const std::vector<ChargingPlan>& plans,
                                 const ReducedGraph& graph, bool include_depot_arcs = true);

/// Two-stage scheme: conservative routing, then per-route charging.
Solution solve_tlp(const InstanceSpec& instance, const SolveConfig& config = {});

/// Iterative scheme: optimistic routing with violated requests promoted to
/// conservative until no pickup time is violated.
Solution solve_ilp(const InstanceSpec& instance, const SolveConfig& config = {});

/// Audits a solution against the full joint model: flow shape, single
/// service, pickup times under the actual charge amounts, energy dynamics and
/// bounds, charge bounds. Returns one message per violated constraint.
std::vector<std::string> check_feasibility(const Solution& solution,
                                           const InstanceSpec& instance,
                                           const SolveConfig& config = {});

}  // namespace evrc
