#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evrc/network.hpp"

namespace evrc {

struct RouteLeg {
  double distance_km = 0;
  double travel_min = 0;
  double energy_kwh = 0;
};

/// A vehicle path through the reduced graph: v_1, interior requests in graph
/// order, v_n. Legs mirror the graph arcs between consecutive nodes.
struct Route {
  std::vector<int> nodes;     // reduced-graph node indices, strictly increasing
  std::vector<RouteLeg> legs; // size nodes.size()-1

  int stop_count() const { return static_cast<int>(nodes.size()); }
};

/// Builds a Route from a node sequence, checking the route invariants against
/// the graph (endpoints, strict order, arcs present).
Route make_route(const ReducedGraph& graph, std::vector<int> nodes);

enum class BoundMode {
  Stage2,       // ub_i = min(e_ij, r_max) for the next leg
  TimeLimited,  // ub_i = min(r_max, E_max, slack_ij / g_i), the largest charge
                // at i that still meets j's pickup time
};

/// Per-node charge upper bounds along a route. The last node gets 0.
std::vector<double> charge_bounds(const ReducedGraph& graph, const Route& route,
                                  const FleetSpec& fleet, BoundMode mode);

struct ChargingPlan {
  std::vector<double> charge_kwh;   // r_i per route node
  std::vector<double> arrival_kwh;  // E_i per route node
  std::vector<double> bound_kwh;    // ub_i used
  double cost = 0;                  // sum r_i * (w1 g_i + w2 p_i)
};

struct ChargingOutcome {
  std::optional<ChargingPlan> plan;
  int failing_leg = -1;  // route leg index when infeasible
  std::string failure;

  bool feasible() const { return plan.has_value(); }
};

/// Exact minimum-cost charging along a fixed route: cheapest-station-first
/// over prefix deficits, respecting per-node bounds and battery headroom.
/// Infeasibility is reported with the failing leg, never repaired.
ChargingOutcome optimal_charging(const ReducedGraph& graph, const Route& route,
                                 const std::vector<double>& bounds, const FleetSpec& fleet,
                                 const Weights& weights);

/// Exhaustive grid-search reference: minimum cost over charge vectors drawn
/// from {0, step, 2 step, ..., ub_i}. Test oracle only; throws
/// Error{Budget} when the search exceeds `max_visits`.
ChargingOutcome charging_oracle(const ReducedGraph& graph, const Route& route,
                                const std::vector<double>& bounds, const FleetSpec& fleet,
                                const Weights& weights, double grid_step_kwh = 0.1,
                                std::uint64_t max_visits = 200'000'000);

}  // namespace evrc
