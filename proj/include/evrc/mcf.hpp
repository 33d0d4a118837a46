#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evrc/charging.hpp"
#include "evrc/network.hpp"

namespace evrc {

/// Routing-stage flow encoding. Request nodes are split into an in/out pair
/// joined by a capacity-1, cost-0 arc so each customer is served at most
/// once; depots stay unsplit. Supply is +K at v_1 and -K at v_n.
struct FlowArc {
  int tail = 0;
  int head = 0;
  std::int64_t capacity = 0;
  std::int64_t cost = 0;   // scaled integer currency-equivalent
  int reduced_arc = -1;    // index into ReducedGraph::arcs(), -1 for internal arcs
};

struct FlowProblem {
  int node_count = 0;
  int source = 0;
  int sink = 0;
  std::int64_t supply = 0;  // K
  std::vector<FlowArc> arcs;
  std::vector<int> node_in;   // reduced node -> flow node receiving arrivals
  std::vector<int> node_out;  // reduced node -> flow node emitting departures
  double cost_scale = 1e-6;   // currency units per integer cost step
};

struct FlowConfig {
  double cost_scale = 1e-6;
  bool idle_free = false;  // zero the usage fee on the direct v_1 -> v_n arc
};

/// Arc costs are w3*T_ij + w4*c_i, scaled to integers. Only admissible arcs
/// are materialized; capacities are 1 out of request nodes and K on depot
/// arcs.
FlowProblem build_flow_network(const ReducedGraph& graph, const ArcMask& mask,
                               const Weights& weights, const FleetSpec& fleet,
                               const FlowConfig& config = {});

struct ArcFlow {
  std::vector<std::int64_t> flow;  // parallel to FlowProblem::arcs
  std::int64_t total_cost = 0;     // scaled
};

/// Successive shortest paths with node potentials; the first potential pass
/// relaxes arcs in topological order so the negative service revenues are
/// handled exactly. Returns an integral cost-minimal flow of value K.
ArcFlow solve_min_cost_flow(const FlowProblem& problem);

/// Splits an integral conserving flow into exactly k paths from v_1 to v_n.
/// Deterministic: outgoing arcs are consumed in reduced-graph node order.
std::vector<Route> decompose_paths(const FlowProblem& problem, const ReducedGraph& graph,
                                   const ArcFlow& flow, int k);

/// Graphviz dump of the flow network (and flow values when given).
std::string to_dot(const FlowProblem& problem, const ArcFlow* flow = nullptr);

}  // namespace evrc
