#include "evrc/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "evrc/error.hpp"

namespace evrc {

namespace {

constexpr double kFeasTol = 1e-6;

Weights effective_weights(const InstanceSpec& instance, const SolveConfig& config) {
  return config.weight_override ? *config.weight_override : instance.weights;
}

std::vector<NodeId> ids_of(const ReducedGraph& graph, const std::vector<int>& nodes) {
  std::vector<NodeId> ids;
  ids.reserve(nodes.size());
  for (int v : nodes) ids.push_back(graph.node(v).id);
  return ids;
}

std::vector<NodeId> served_ids(const ReducedGraph& graph, const std::vector<Route>& routes) {
  std::set<NodeId> served;
  for (const auto& route : routes) {
    for (size_t k = 1; k + 1 < route.nodes.size(); ++k) {
      served.insert(graph.node(route.nodes[k]).id);
    }
  }
  return {served.begin(), served.end()};
}

struct StageResult {
  std::vector<Route> routes;
  std::vector<ChargingPlan> plans;
  std::int64_t flow_cost = 0;
};

// One routing + charging pass under the given arc mask.
StageResult run_stages(const ReducedGraph& graph, const ArcMask& mask,
                       const InstanceSpec& instance, const Weights& weights,
                       const SolveConfig& config) {
  FlowConfig flow_config{config.cost_scale, config.idle_free};
  const FlowProblem problem = build_flow_network(graph, mask, weights, instance.fleet, flow_config);
  const ArcFlow flow = solve_min_cost_flow(problem);
  StageResult result;
  result.flow_cost = flow.total_cost;
  result.routes = decompose_paths(problem, graph, flow, instance.fleet.count);
  for (const auto& route : result.routes) {
    const auto bounds = charge_bounds(graph, route, instance.fleet, BoundMode::Stage2);
    ChargingOutcome outcome = optimal_charging(graph, route, bounds, instance.fleet, weights);
    if (!outcome.feasible()) {
      fail(ErrorKind::Infeasible, outcome.failure);
    }
    result.plans.push_back(std::move(*outcome.plan));
  }
  return result;
}

}  // namespace

ObjectiveBreakdown compute_objective(const std::vector<Route>& routes,
                                     const std::vector<ChargingPlan>& plans,
                                     const ReducedGraph& graph, const Weights& weights,
                                     bool idle_free) {
  require(routes.size() == plans.size(), ErrorKind::Internal,
          "objective: routes and plans differ in length");
  ObjectiveBreakdown breakdown;
  for (size_t r = 0; r < routes.size(); ++r) {
    const Route& route = routes[r];
    const ChargingPlan& plan = plans[r];
    require(plan.charge_kwh.size() == route.nodes.size(), ErrorKind::Internal,
            "objective: plan does not match its route");
    for (size_t k = 0; k < route.nodes.size(); ++k) {
      const ReducedNode& node = graph.node(route.nodes[k]);
      const double charge = plan.charge_kwh[k];
      if (charge > 0) {
        breakdown.charge_time += weights.charge_time * charge * node.charge_rate;
        breakdown.charge_cost += weights.charge_cost * charge * node.charge_price;
      }
      if (k + 1 < route.nodes.size()) {
        breakdown.travel_time += weights.travel_time * route.legs[k].travel_min;
        const bool direct_idle = idle_free && route.nodes[k] == graph.start() &&
                                 route.nodes[k + 1] == graph.end();
        if (!direct_idle) breakdown.usage_revenue += weights.usage * node.unified_cost;
      }
    }
  }
  return breakdown;
}

std::vector<int> violation_check(const std::vector<Route>& routes,
                                 const std::vector<ChargingPlan>& plans,
                                 const ReducedGraph& graph, bool include_depot_arcs) {
  require(routes.size() == plans.size(), ErrorKind::Internal,
          "violation check: routes and plans differ in length");
  std::set<int> violated;
  for (size_t r = 0; r < routes.size(); ++r) {
    const Route& route = routes[r];
    const ChargingPlan& plan = plans[r];
    for (size_t k = 0; k + 1 < route.nodes.size(); ++k) {
      const int tail = route.nodes[k];
      const int head = route.nodes[k + 1];
      if (!graph.node(head).is_request) continue;
      if (!include_depot_arcs && tail == graph.start()) continue;
      const double charge = plan.charge_kwh[k];
      const double charge_min = charge > 0 ? graph.node(tail).charge_rate * charge : 0.0;
      const double phi = route.legs[k].travel_min + charge_min + graph.node(tail).pickup_time -
                         graph.node(head).pickup_time;
      if (phi > 0) violated.insert(head);
    }
  }
  return {violated.begin(), violated.end()};
}

Solution solve_tlp(const InstanceSpec& instance, const SolveConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const Weights weights = effective_weights(instance, config);
  const ReducedGraph graph = build_reduced_graph(instance);
  const ArcMask mask = prune_conservative(graph, instance.fleet);

  StageResult stage = run_stages(graph, mask, instance, weights, config);

  Solution solution;
  solution.method = Solution::Method::Tlp;
  solution.routes = std::move(stage.routes);
  solution.plans = std::move(stage.plans);
  for (const auto& route : solution.routes) {
    solution.route_ids.push_back(ids_of(graph, route.nodes));
  }
  solution.objective =
      compute_objective(solution.routes, solution.plans, graph, weights, config.idle_free);
  solution.served = served_ids(graph, solution.routes);
  solution.iterations = 1;
  solution.cost_scale = config.cost_scale;
  IterationStats stats;
  stats.flow_cost = stage.flow_cost;
  stats.served = static_cast<int>(solution.served.size());
  solution.iteration_stats.push_back(stats);
  solution.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return solution;
}

Solution solve_ilp(const InstanceSpec& instance, const SolveConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const Weights weights = effective_weights(instance, config);
  const ReducedGraph graph = build_reduced_graph(instance);

  std::vector<ChargeMode> mode(static_cast<size_t>(graph.size()), ChargeMode::Optimistic);
  mode[static_cast<size_t>(graph.end())] = ChargeMode::Conservative;

  Solution solution;
  solution.method = Solution::Method::Ilp;
  solution.cost_scale = config.cost_scale;

  std::set<int> violated_total;
  const int cap = graph.request_count() + 1;
  for (int q = 1; q <= cap; ++q) {
    const ArcMask mask = prune_arcs(graph, instance.fleet, mode);
    StageResult stage = run_stages(graph, mask, instance, weights, config);
    const std::vector<int> fresh =
        violation_check(stage.routes, stage.plans, graph, config.phi_depot_arcs);

    solution.routes = std::move(stage.routes);
    solution.plans = std::move(stage.plans);
    solution.iterations = q;

    for (int v : fresh) {
      require(violated_total.count(v) == 0, ErrorKind::Internal,
              "iterative solve: request '" + graph.node(v).id +
                  "' violated again under a conservative arc");
      violated_total.insert(v);
      mode[static_cast<size_t>(v)] = ChargeMode::Conservative;
    }

    IterationStats stats;
    stats.flow_cost = stage.flow_cost;
    stats.served = static_cast<int>(served_ids(graph, solution.routes).size());
    for (int v : violated_total) stats.violated.push_back(graph.node(v).id);
    solution.iteration_stats.push_back(stats);

    if (fresh.empty()) {
      solution.route_ids.clear();
      for (const auto& route : solution.routes) {
        solution.route_ids.push_back(ids_of(graph, route.nodes));
      }
      solution.objective =
          compute_objective(solution.routes, solution.plans, graph, weights, config.idle_free);
      solution.served = served_ids(graph, solution.routes);
      solution.final_violated.clear();
      for (int v : violated_total) solution.final_violated.push_back(graph.node(v).id);
      solution.wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
      return solution;
    }
  }
  fail(ErrorKind::Internal,
       "iterative solve: exceeded the |R|+1 iteration bound, which should be unreachable");
}

std::vector<std::string> check_feasibility(const Solution& solution,
                                           const InstanceSpec& instance,
                                           const SolveConfig& config) {
  (void)config;
  const ReducedGraph graph = build_reduced_graph(instance);
  std::vector<std::string> failures;
  auto flag = [&](const std::string& message) { failures.push_back(message); };

  if (solution.routes.size() != static_cast<size_t>(instance.fleet.count)) {
    flag("fleet: expected " + std::to_string(instance.fleet.count) + " routes, got " +
         std::to_string(solution.routes.size()));
  }
  if (solution.routes.size() != solution.plans.size()) {
    flag("plans: route/plan count mismatch");
    return failures;
  }

  std::set<int> seen_requests;
  for (size_t r = 0; r < solution.routes.size(); ++r) {
    const Route& route = solution.routes[r];
    const ChargingPlan& plan = solution.plans[r];
    const std::string tag = "route[" + std::to_string(r) + "]";

    if (route.nodes.empty() || route.nodes.front() != graph.start() ||
        route.nodes.back() != graph.end()) {
      flag(tag + ": must run from the start depot to the end depot (flow shape)");
      continue;
    }
    if (plan.charge_kwh.size() != route.nodes.size() ||
        plan.arrival_kwh.size() != route.nodes.size()) {
      flag(tag + ": plan arrays do not match the route");
      continue;
    }
    bool ordered = true;
    for (size_t k = 0; k + 1 < route.nodes.size(); ++k) {
      if (route.nodes[k] >= route.nodes[k + 1] ||
          graph.arc_index(route.nodes[k], route.nodes[k + 1]) < 0) {
        ordered = false;
      }
    }
    if (!ordered) {
      flag(tag + ": stops must follow the pickup-time order with existing arcs");
      continue;
    }

    // Single service across the fleet.
    for (size_t k = 1; k + 1 < route.nodes.size(); ++k) {
      if (!seen_requests.insert(route.nodes[k]).second) {
        flag(tag + ": request '" + graph.node(route.nodes[k]).id + "' served more than once");
      }
    }

    // Pickup times under the actual charge amounts.
    for (size_t k = 0; k + 1 < route.nodes.size(); ++k) {
      const ReducedNode& tail = graph.node(route.nodes[k]);
      const ReducedNode& head = graph.node(route.nodes[k + 1]);
      const int a = graph.arc_index(route.nodes[k], route.nodes[k + 1]);
      const double charge = plan.charge_kwh[k];
      if (charge > kFeasTol && tail.charge_rate == kNoCharger) {
        flag(tag + ": charging at '" + tail.id + "', which has no charger (pickup-time rule)");
        continue;
      }
      const double charge_min = charge > kFeasTol ? tail.charge_rate * charge : 0.0;
      const double arrival = tail.pickup_time + graph.arc(a).travel_min + charge_min;
      if (arrival > head.pickup_time + kFeasTol) {
        flag(tag + ": pickup time missed at '" + head.id + "' by " +
             std::to_string(arrival - head.pickup_time) + " min");
      }
    }

    // Energy dynamics, bounds, and charge bounds.
    if (std::abs(plan.arrival_kwh[0] - instance.fleet.initial_kwh) > kFeasTol) {
      flag(tag + ": initial energy differs from E_0");
    }
    double energy = instance.fleet.initial_kwh;
    for (size_t k = 0; k < route.nodes.size(); ++k) {
      const std::string at = tag + " at '" + graph.node(route.nodes[k]).id + "'";
      const double charge = plan.charge_kwh[k];
      if (std::abs(plan.arrival_kwh[k] - energy) > kFeasTol) {
        flag(at + ": stored energy diverges from the dynamics");
      }
      if (energy < -kFeasTol || energy > instance.fleet.battery_kwh + kFeasTol) {
        flag(at + ": battery level outside [0, E_max]");
      }
      if (charge < -kFeasTol || charge > instance.fleet.max_charge_kwh + kFeasTol) {
        flag(at + ": charge amount outside [0, r_max]");
      }
      if (energy + charge > instance.fleet.battery_kwh + kFeasTol) {
        flag(at + ": charging beyond battery capacity");
      }
      if (k + 1 < route.nodes.size()) {
        energy += charge - route.legs[k].energy_kwh;
      } else if (charge > kFeasTol) {
        flag(at + ": charging at the end depot must be zero");
      }
    }
  }
  return failures;
}

}  // namespace evrc
