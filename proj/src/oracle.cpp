#include "evrc/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "evrc/error.hpp"

namespace evrc {

ChargingOutcome route_charging_with_time(const ReducedGraph& graph, const Route& route,
                                         const FleetSpec& fleet, const Weights& weights) {
  const auto bounds = charge_bounds(graph, route, fleet, BoundMode::TimeLimited);
  return optimal_charging(graph, route, bounds, fleet, weights);
}

namespace {

struct Enumerator {
  const ReducedGraph& graph;
  const InstanceSpec& instance;
  const Weights& weights;
  const SolveConfig& config;
  const ArcMask mask;  // optimistic: the widest arc set any plan can use
  const OracleBudget& budget;

  int request_count;
  std::vector<int> vehicle_last;   // reduced node per vehicle, start() if unused
  std::vector<int> assignment;     // per request: vehicle or -1 for unserved
  double partial_cost = 0;
  double pending_revenue = 0;      // revenue not yet paid on an out-arc
  std::uint64_t visits = 0;

  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<int> best_assignment;

  // Zero-charge time tests and the e_ij <= E_max rule are necessary for any
  // feasible plan, so this mask excludes no candidate; all heads optimistic,
  // including v_n (the exact charging step enforces the horizon itself).
  static ArcMask candidate_mask(const ReducedGraph& g, const FleetSpec& fleet) {
    std::vector<ChargeMode> all(static_cast<size_t>(g.size()), ChargeMode::Optimistic);
    return prune_arcs(g, fleet, all);
  }

  Enumerator(const ReducedGraph& g, const InstanceSpec& inst, const Weights& w,
             const SolveConfig& cfg, const OracleBudget& b)
      : graph(g),
        instance(inst),
        weights(w),
        config(cfg),
        mask(candidate_mask(g, inst.fleet)),
        budget(b),
        request_count(g.request_count()),
        vehicle_last(static_cast<size_t>(inst.fleet.count), g.start()),
        assignment(static_cast<size_t>(request_count), -1) {}

  double arc_cost(int from, int to) const {
    const int a = graph.arc_index(from, to);
    const ReducedArc& arc = graph.arc(a);
    double unified = graph.node(from).unified_cost;
    if (config.idle_free && from == graph.start() && to == graph.end()) unified = 0;
    return weights.travel_time * arc.travel_min + weights.usage * unified;
  }

  bool arc_usable(int from, int to) const {
    const int a = graph.arc_index(from, to);
    return a >= 0 && mask.admissible(a);
  }

  // Close every open route, price its exact charging, and score the leaf.
  void evaluate_leaf() {
    double cost = partial_cost;
    for (int v = 0; v < instance.fleet.count; ++v) {
      const int last = vehicle_last[static_cast<size_t>(v)];
      if (!arc_usable(last, graph.end())) return;
      cost += arc_cost(last, graph.end());
      if (cost - 1e-9 >= best_cost) return;
    }
    for (int v = 0; v < instance.fleet.count; ++v) {
      const Route route = route_for_vehicle(v, assignment);
      const ChargingOutcome charging =
          route_charging_with_time(graph, route, instance.fleet, weights);
      if (!charging.feasible()) return;
      cost += charging.plan->cost;
      if (cost - 1e-9 >= best_cost) return;
    }
    if (cost < best_cost) {
      best_cost = cost;
      best_assignment = assignment;
    }
  }

  Route route_for_vehicle(int vehicle, const std::vector<int>& assign) const {
    std::vector<int> nodes{graph.start()};
    for (int r = 0; r < request_count; ++r) {
      if (assign[static_cast<size_t>(r)] == vehicle) nodes.push_back(r + 1);
    }
    nodes.push_back(graph.end());
    return make_route(graph, std::move(nodes));
  }

  void search(int request) {
    if (++visits > budget.max_nodes) {
      fail(ErrorKind::Budget, "oracle: enumeration budget exceeded (partial search)");
    }
    if (partial_cost - weights.usage * pending_revenue > best_cost + 1e-9) {
      return;  // even collecting all remaining revenue cannot beat the incumbent
    }
    if (request == request_count) {
      evaluate_leaf();
      return;
    }
    const int node = request + 1;  // reduced index
    const double revenue = -graph.node(node).unified_cost;

    // Serve with one of the vehicles; only the first idle vehicle may open.
    bool opened_idle = false;
    for (int v = 0; v < instance.fleet.count; ++v) {
      const int last = vehicle_last[static_cast<size_t>(v)];
      if (last == graph.start()) {
        if (opened_idle) continue;
        opened_idle = true;
      }
      if (!arc_usable(last, node)) continue;
      const double added = arc_cost(last, node);
      const double paid = graph.node(last).is_request ? -graph.node(last).unified_cost : 0.0;

      assignment[static_cast<size_t>(request)] = v;
      vehicle_last[static_cast<size_t>(v)] = node;
      partial_cost += added;
      pending_revenue -= paid;
      search(request + 1);
      pending_revenue += paid;
      partial_cost -= added;
      vehicle_last[static_cast<size_t>(v)] = last;
      assignment[static_cast<size_t>(request)] = -1;
    }

    // Leave unserved.
    pending_revenue -= revenue;
    search(request + 1);
    pending_revenue += revenue;
  }

  void run() {
    pending_revenue = 0;
    for (int r = 0; r < request_count; ++r) {
      pending_revenue += -graph.node(r + 1).unified_cost;
    }
    search(0);
    require(std::isfinite(best_cost), ErrorKind::Internal,
            "oracle: no candidate evaluated, the direct route should always be feasible");
  }
};

}  // namespace

Solution enumerate_exact(const InstanceSpec& instance, const OracleBudget& budget,
                         const SolveConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  require(static_cast<int>(instance.requests.size()) <= budget.max_requests, ErrorKind::Budget,
          "oracle: instance has " + std::to_string(instance.requests.size()) +
              " requests, budget allows " + std::to_string(budget.max_requests));
  require(instance.fleet.count <= budget.max_fleet, ErrorKind::Budget,
          "oracle: fleet of " + std::to_string(instance.fleet.count) + " exceeds the budget of " +
              std::to_string(budget.max_fleet));

  const Weights weights = config.weight_override ? *config.weight_override : instance.weights;
  const ReducedGraph graph = build_reduced_graph(instance);

  Enumerator enumerator(graph, instance, weights, config, budget);
  enumerator.run();

  Solution solution;
  solution.method = Solution::Method::Oracle;
  solution.cost_scale = config.cost_scale;
  solution.candidates_explored = enumerator.visits;
  for (int v = 0; v < instance.fleet.count; ++v) {
    Route route = enumerator.route_for_vehicle(v, enumerator.best_assignment);
    ChargingOutcome charging = route_charging_with_time(graph, route, instance.fleet, weights);
    require(charging.feasible(), ErrorKind::Internal, "oracle: winning candidate lost feasibility");
    solution.route_ids.push_back({});
    for (int node : route.nodes) solution.route_ids.back().push_back(graph.node(node).id);
    solution.routes.push_back(std::move(route));
    solution.plans.push_back(std::move(*charging.plan));
  }
  solution.objective = compute_objective(solution.routes, solution.plans, graph, weights,
                                         config.idle_free);
  for (const auto& route : solution.routes) {
    for (size_t k = 1; k + 1 < route.nodes.size(); ++k) {
      solution.served.push_back(graph.node(route.nodes[k]).id);
    }
  }
  std::sort(solution.served.begin(), solution.served.end());
  solution.iterations = 1;
  solution.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return solution;
}

}  // namespace evrc
