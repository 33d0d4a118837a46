#pragma once

#include <cstdint>

#include "evrc/solver.hpp"

namespace evrc {

struct OracleBudget {
  int max_requests = 12;
  int max_fleet = 3;
  std::uint64_t max_nodes = 400'000'000;  // DFS visits before giving up
};

/// Exact desk-scale baseline: enumerates every assignment of request subsets
/// to vehicles as pickup-time-ordered chains, solves the exact
/// charging-with-deadlines subproblem per route, and returns the global
/// minimum. Ties go to the lexicographically smallest assignment encoding
/// (vehicle 0 before vehicle 1 before leaving a request unserved).
Solution enumerate_exact(const InstanceSpec& instance, const OracleBudget& budget = {},
                         const SolveConfig& config = {});

/// Minimum-cost charging for a fixed route under the full deadline rule:
/// charge at i is additionally capped by (t_j - t_i - T_ij)/g_i for the next
/// leg (i, j).
ChargingOutcome route_charging_with_time(const ReducedGraph& graph, const Route& route,
                                         const FleetSpec& fleet, const Weights& weights);

}  // namespace evrc
