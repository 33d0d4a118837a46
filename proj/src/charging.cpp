#include "evrc/charging.hpp"

#include <algorithm>
#include <cmath>

#include "evrc/error.hpp"

namespace evrc {

namespace {

constexpr double kTol = 1e-9;

double station_cost(const ReducedNode& node, const Weights& weights) {
  if (node.charge_rate == kNoCharger) return kNoCharger;
  return weights.charge_time * node.charge_rate + weights.charge_cost * node.charge_price;
}

}  // namespace

Route make_route(const ReducedGraph& graph, std::vector<int> nodes) {
  require(nodes.size() >= 2, ErrorKind::Internal, "route: needs at least the two depots");
  require(nodes.front() == graph.start(), ErrorKind::Internal, "route: must start at v_1");
  require(nodes.back() == graph.end(), ErrorKind::Internal, "route: must end at v_n");
  Route route;
  route.nodes = std::move(nodes);
  for (size_t k = 0; k + 1 < route.nodes.size(); ++k) {
    require(route.nodes[k] < route.nodes[k + 1], ErrorKind::Internal,
            "route: nodes must be strictly increasing in graph order");
    const int a = graph.arc_index(route.nodes[k], route.nodes[k + 1]);
    require(a >= 0, ErrorKind::Internal, "route: missing arc between consecutive stops");
    const ReducedArc& arc = graph.arc(a);
    route.legs.push_back({arc.distance_km, arc.travel_min, arc.energy_kwh});
  }
  return route;
}

std::vector<double> charge_bounds(const ReducedGraph& graph, const Route& route,
                                  const FleetSpec& fleet, BoundMode mode) {
  const size_t m = route.nodes.size();
  std::vector<double> bounds(m, 0.0);
  for (size_t k = 0; k + 1 < m; ++k) {
    const ReducedNode& tail = graph.node(route.nodes[k]);
    const RouteLeg& leg = route.legs[k];
    if (tail.charge_rate == kNoCharger) {
      bounds[k] = 0.0;
      continue;
    }
    if (mode == BoundMode::Stage2) {
      bounds[k] = std::min(leg.energy_kwh, fleet.max_charge_kwh);
    } else {
      const ReducedNode& head = graph.node(route.nodes[k + 1]);
      const double slack = head.pickup_time - tail.pickup_time - leg.travel_min;
      double by_time;
      if (slack <= 0) {
        by_time = 0.0;
      } else if (tail.charge_rate <= 0) {
        by_time = fleet.battery_kwh;  // instantaneous charging: no time limit
      } else {
        by_time = slack / tail.charge_rate;
      }
      bounds[k] = std::min({fleet.max_charge_kwh, fleet.battery_kwh, std::max(0.0, by_time)});
    }
  }
  return bounds;
}

ChargingOutcome optimal_charging(const ReducedGraph& graph, const Route& route,
                                 const std::vector<double>& bounds, const FleetSpec& fleet,
                                 const Weights& weights) {
  const size_t m = route.nodes.size();
  require(bounds.size() == m, ErrorKind::Internal, "charging: bounds do not match route");

  // Prefix formulation: with P[k] the total purchased through node k and C[k]
  // the consumption through leg k, every node k needs
  //   P[k] >= C[k] - E_0            (battery never below zero)
  //   P[k] <= E_max - E_0 + C[k-1]  (battery plus charge never above E_max).
  std::vector<double> kappa(m), purchased(m, 0.0), headroom(m);
  std::vector<double> prefix(m, 0.0);  // running P[k]
  double consumed = 0;
  for (size_t k = 0; k < m; ++k) {
    kappa[k] = station_cost(graph.node(route.nodes[k]), weights);
    headroom[k] = fleet.battery_kwh - fleet.initial_kwh + consumed;
    if (k + 1 < m) consumed += route.legs[k].energy_kwh;
  }

  ChargingOutcome outcome;
  std::vector<double> charge(m, 0.0);

  double deficit_base = -fleet.initial_kwh;
  for (size_t k = 0; k + 1 < m; ++k) {
    deficit_base += route.legs[k].energy_kwh;
    double need = deficit_base - prefix[k];
    while (need > kTol) {
      // Cheapest station at or before k with spare bound and spare headroom
      // through k; among equal costs the latest one keeps the battery low.
      int best = -1;
      double best_spare = 0;
      for (size_t s = 0; s <= k; ++s) {
        if (kappa[s] == kNoCharger) continue;
        double spare = bounds[s] - charge[s];
        for (size_t t = s; t <= k; ++t) {
          spare = std::min(spare, headroom[t] - prefix[t]);
        }
        if (spare <= kTol) continue;
        if (best < 0 || kappa[s] < kappa[static_cast<size_t>(best)] ||
            (kappa[s] == kappa[static_cast<size_t>(best)] && static_cast<int>(s) > best)) {
          best = static_cast<int>(s);
          best_spare = spare;
        }
      }
      if (best < 0) {
        outcome.failing_leg = static_cast<int>(k);
        outcome.failure = "charging infeasible on leg (" + graph.node(route.nodes[k]).id +
                          ", " + graph.node(route.nodes[k + 1]).id + "): deficit of " +
                          std::to_string(need) + " kWh cannot be covered";
        return outcome;
      }
      const double delta = std::min(need, best_spare);
      charge[static_cast<size_t>(best)] += delta;
      for (size_t t = static_cast<size_t>(best); t < m; ++t) prefix[t] += delta;
      need -= delta;
    }
  }

  ChargingPlan plan;
  plan.charge_kwh = charge;
  plan.bound_kwh = bounds;
  plan.arrival_kwh.resize(m);
  plan.arrival_kwh[0] = fleet.initial_kwh;
  for (size_t k = 0; k + 1 < m; ++k) {
    plan.arrival_kwh[k + 1] = plan.arrival_kwh[k] + charge[k] - route.legs[k].energy_kwh;
  }
  plan.cost = 0;
  for (size_t k = 0; k < m; ++k) {
    if (charge[k] > 0) plan.cost += charge[k] * kappa[k];
  }
  outcome.plan = std::move(plan);
  return outcome;
}

ChargingOutcome charging_oracle(const ReducedGraph& graph, const Route& route,
                                const std::vector<double>& bounds, const FleetSpec& fleet,
                                const Weights& weights, double grid_step_kwh,
                                std::uint64_t max_visits) {
  const size_t m = route.nodes.size();
  require(bounds.size() == m, ErrorKind::Internal, "charging oracle: bounds do not match route");

  std::vector<double> kappa(m);
  std::vector<std::vector<double>> candidates(m);
  for (size_t k = 0; k < m; ++k) {
    kappa[k] = station_cost(graph.node(route.nodes[k]), weights);
    candidates[k].push_back(0.0);
    if (k + 1 < m && bounds[k] > 0 && kappa[k] != kNoCharger) {
      for (double r = grid_step_kwh; r < bounds[k] - kTol; r += grid_step_kwh) {
        candidates[k].push_back(r);
      }
      candidates[k].push_back(bounds[k]);
    }
  }

  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<double> best(m, 0.0), current(m, 0.0);
  std::uint64_t visits = 0;

  // Depth-first over grid vectors; candidates ascend, so once the partial
  // cost reaches the incumbent the rest of a node's choices cannot improve.
  auto search = [&](auto&& self, size_t k, double energy, double cost) -> void {
    if (++visits > max_visits) {
      fail(ErrorKind::Budget, "charging oracle: search budget exceeded; shrink the route");
    }
    if (k + 1 == m) {
      if (cost < best_cost) {
        best_cost = cost;
        best = current;
      }
      return;
    }
    const double need = route.legs[k].energy_kwh;
    for (double r : candidates[k]) {
      const double c = cost + r * kappa[k];
      if (c >= best_cost) break;
      if (energy + r > fleet.battery_kwh + kTol) break;
      if (energy + r < need - kTol) continue;
      current[k] = r;
      self(self, k + 1, energy + r - need, c);
    }
    current[k] = 0.0;
  };
  search(search, 0, fleet.initial_kwh, 0.0);

  ChargingOutcome outcome;
  if (!std::isfinite(best_cost)) {
    outcome.failing_leg = 0;
    outcome.failure = "charging oracle: no feasible grid vector";
    return outcome;
  }
  ChargingPlan plan;
  plan.charge_kwh = best;
  plan.bound_kwh = bounds;
  plan.arrival_kwh.resize(m);
  plan.arrival_kwh[0] = fleet.initial_kwh;
  for (size_t k = 0; k + 1 < m; ++k) {
    plan.arrival_kwh[k + 1] = plan.arrival_kwh[k] + best[k] - route.legs[k].energy_kwh;
  }
  plan.cost = best_cost;
  outcome.plan = std::move(plan);
  return outcome;
}

}  // namespace evrc
