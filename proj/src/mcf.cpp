#include "evrc/mcf.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "evrc/error.hpp"

namespace evrc {

namespace {

constexpr std::int64_t kInfCost = std::numeric_limits<std::int64_t>::max() / 4;

std::int64_t scaled(double cost, double scale) {
  return static_cast<std::int64_t>(std::llround(cost / scale));
}

}  // namespace

FlowProblem build_flow_network(const ReducedGraph& graph, const ArcMask& mask,
                               const Weights& weights, const FleetSpec& fleet,
                               const FlowConfig& config) {
  require(mask.state.size() == graph.arcs().size(), ErrorKind::Internal,
          "flow network: mask does not match graph");

  const int n = graph.size();
  FlowProblem problem;
  problem.cost_scale = config.cost_scale;
  problem.supply = fleet.count;
  problem.node_in.resize(static_cast<size_t>(n));
  problem.node_out.resize(static_cast<size_t>(n));

  problem.node_in[0] = problem.node_out[0] = 0;  // v_1
  int next = 1;
  for (int i = 1; i + 1 < n; ++i) {
    problem.node_in[static_cast<size_t>(i)] = next++;
    problem.node_out[static_cast<size_t>(i)] = next++;
  }
  problem.node_in[static_cast<size_t>(n - 1)] = problem.node_out[static_cast<size_t>(n - 1)] =
      next++;
  problem.node_count = next;
  problem.source = 0;
  problem.sink = problem.node_in[static_cast<size_t>(n - 1)];

  // Internal service arcs first (capacity 1, cost 0), then graph arcs grouped
  // by tail so decomposition consumes heads in node order.
  for (int i = 1; i + 1 < n; ++i) {
    FlowArc arc;
    arc.tail = problem.node_in[static_cast<size_t>(i)];
    arc.head = problem.node_out[static_cast<size_t>(i)];
    arc.capacity = 1;
    arc.cost = 0;
    problem.arcs.push_back(arc);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int a = graph.arc_index(i, j);
      if (a < 0 || !mask.admissible(a)) continue;
      const ReducedArc& reduced = graph.arc(a);
      const ReducedNode& tail = graph.node(i);
      double unified = tail.unified_cost;
      if (config.idle_free && i == graph.start() && j == graph.end()) {
        unified = 0;  // idle EVs do not pay the usage fee
      }
      FlowArc arc;
      arc.tail = problem.node_out[static_cast<size_t>(i)];
      arc.head = problem.node_in[static_cast<size_t>(j)];
      arc.capacity = (i == graph.start() || j == graph.end()) ? fleet.count : 1;
      if (graph.node(i).is_request) arc.capacity = 1;
      arc.cost = scaled(weights.travel_time * reduced.travel_min + weights.usage * unified,
                        config.cost_scale);
      arc.reduced_arc = a;
      problem.arcs.push_back(arc);
    }
  }
  return problem;
}

ArcFlow solve_min_cost_flow(const FlowProblem& problem) {
  const int n = problem.node_count;
  const size_t m = problem.arcs.size();

  // Residual representation: forward arc 2a, backward arc 2a+1.
  struct Residual {
    int head;
    std::int64_t cap;
    std::int64_t cost;
  };
  std::vector<Residual> residual(2 * m);
  std::vector<std::vector<int>> out(static_cast<size_t>(n));
  for (size_t a = 0; a < m; ++a) {
    const FlowArc& arc = problem.arcs[a];
    residual[2 * a] = {arc.head, arc.capacity, arc.cost};
    residual[2 * a + 1] = {arc.tail, 0, -arc.cost};
    out[static_cast<size_t>(arc.tail)].push_back(static_cast<int>(2 * a));
    out[static_cast<size_t>(arc.head)].push_back(static_cast<int>(2 * a + 1));
  }

  // Initial potentials: one relaxation sweep in topological order. The flow
  // node numbering is already topological for the DAG.
  std::vector<std::int64_t> potential(static_cast<size_t>(n), kInfCost);
  potential[static_cast<size_t>(problem.source)] = 0;
  for (int u = 0; u < n; ++u) {
    if (potential[static_cast<size_t>(u)] >= kInfCost) continue;
    for (int e : out[static_cast<size_t>(u)]) {
      if (e % 2 != 0) continue;  // original arcs only
      const Residual& arc = residual[static_cast<size_t>(e)];
      require(arc.head > u, ErrorKind::Internal, "flow network: arcs must be topological");
      potential[static_cast<size_t>(arc.head)] =
          std::min(potential[static_cast<size_t>(arc.head)],
                   potential[static_cast<size_t>(u)] + arc.cost);
    }
  }
  for (auto& p : potential) {
    if (p >= kInfCost) p = 0;  // unreachable nodes never join an augmenting path
  }

  std::vector<std::int64_t> dist(static_cast<size_t>(n));
  std::vector<int> parent_edge(static_cast<size_t>(n));
  std::vector<char> visited(static_cast<size_t>(n));

  ArcFlow result;
  result.flow.assign(m, 0);
  result.total_cost = 0;

  std::int64_t routed = 0;
  while (routed < problem.supply) {
    std::fill(dist.begin(), dist.end(), kInfCost);
    std::fill(parent_edge.begin(), parent_edge.end(), -1);
    std::fill(visited.begin(), visited.end(), 0);
    dist[static_cast<size_t>(problem.source)] = 0;

    using Entry = std::pair<std::int64_t, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.push({0, problem.source});
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (visited[static_cast<size_t>(u)]) continue;
      visited[static_cast<size_t>(u)] = 1;
      for (int e : out[static_cast<size_t>(u)]) {
        const Residual& arc = residual[static_cast<size_t>(e)];
        if (arc.cap <= 0 || visited[static_cast<size_t>(arc.head)]) continue;
        const std::int64_t reduced = d + arc.cost + potential[static_cast<size_t>(u)] -
                                     potential[static_cast<size_t>(arc.head)];
        if (reduced < dist[static_cast<size_t>(arc.head)]) {
          dist[static_cast<size_t>(arc.head)] = reduced;
          parent_edge[static_cast<size_t>(arc.head)] = e;
          heap.push({reduced, arc.head});
        }
      }
    }
    require(visited[static_cast<size_t>(problem.sink)], ErrorKind::Internal,
            "min-cost flow: sink unreachable while units remain");

    for (int v = 0; v < n; ++v) {
      if (visited[static_cast<size_t>(v)]) {
        potential[static_cast<size_t>(v)] +=
            dist[static_cast<size_t>(v)] - dist[static_cast<size_t>(problem.sink)];
      }
    }

    std::int64_t push = problem.supply - routed;
    for (int v = problem.sink; v != problem.source;) {
      const Residual& arc = residual[static_cast<size_t>(parent_edge[static_cast<size_t>(v)])];
      push = std::min(push, arc.cap);
      v = residual[static_cast<size_t>(parent_edge[static_cast<size_t>(v)] ^ 1)].head;
    }
    for (int v = problem.sink; v != problem.source;) {
      const int e = parent_edge[static_cast<size_t>(v)];
      residual[static_cast<size_t>(e)].cap -= push;
      residual[static_cast<size_t>(e ^ 1)].cap += push;
      result.total_cost += push * residual[static_cast<size_t>(e)].cost;
      v = residual[static_cast<size_t>(e ^ 1)].head;
    }
    routed += push;
  }

  for (size_t a = 0; a < m; ++a) {
    result.flow[a] = problem.arcs[a].capacity - residual[2 * a].cap;
  }
  return result;
}

std::vector<Route> decompose_paths(const FlowProblem& problem, const ReducedGraph& graph,
                                   const ArcFlow& flow, int k) {
  require(flow.flow.size() == problem.arcs.size(), ErrorKind::Internal,
          "decompose: flow does not match problem");

  // Contract checks: capacities, conservation, and flow value k.
  std::vector<std::int64_t> balance(static_cast<size_t>(problem.node_count), 0);
  for (size_t a = 0; a < problem.arcs.size(); ++a) {
    const FlowArc& arc = problem.arcs[a];
    require(flow.flow[a] >= 0 && flow.flow[a] <= arc.capacity, ErrorKind::Internal,
            "decompose: arc flow outside [0, capacity]");
    balance[static_cast<size_t>(arc.tail)] += flow.flow[a];
    balance[static_cast<size_t>(arc.head)] -= flow.flow[a];
  }
  for (int v = 0; v < problem.node_count; ++v) {
    const std::int64_t expected =
        v == problem.source ? k : (v == problem.sink ? -k : 0);
    require(balance[static_cast<size_t>(v)] == expected, ErrorKind::Internal,
            "decompose: flow is not conserving");
  }

  // Remaining flow per arc; outgoing lists are already in head node order.
  std::vector<std::int64_t> remaining = flow.flow;
  std::vector<std::vector<int>> out(static_cast<size_t>(problem.node_count));
  for (size_t a = 0; a < problem.arcs.size(); ++a) {
    out[static_cast<size_t>(problem.arcs[a].tail)].push_back(static_cast<int>(a));
  }

  // Flow node -> reduced node.
  std::vector<int> reduced_of(static_cast<size_t>(problem.node_count), -1);
  for (int i = 0; i < graph.size(); ++i) {
    reduced_of[static_cast<size_t>(problem.node_in[static_cast<size_t>(i)])] = i;
    reduced_of[static_cast<size_t>(problem.node_out[static_cast<size_t>(i)])] = i;
  }

  std::vector<Route> routes;
  for (int path = 0; path < k; ++path) {
    std::vector<int> nodes;
    int v = problem.source;
    nodes.push_back(reduced_of[static_cast<size_t>(v)]);
    while (v != problem.sink) {
      int chosen = -1;
      for (int a : out[static_cast<size_t>(v)]) {
        if (remaining[static_cast<size_t>(a)] > 0) {
          chosen = a;
          break;
        }
      }
      require(chosen >= 0, ErrorKind::Internal, "decompose: stranded flow unit");
      remaining[static_cast<size_t>(chosen)] -= 1;
      v = problem.arcs[static_cast<size_t>(chosen)].head;
      const int reduced = reduced_of[static_cast<size_t>(v)];
      if (nodes.back() != reduced) nodes.push_back(reduced);
    }
    routes.push_back(make_route(graph, std::move(nodes)));
  }
  return routes;
}

std::string to_dot(const FlowProblem& problem, const ArcFlow* flow) {
  std::ostringstream dot;
  dot << "digraph flow {\n  rankdir=LR;\n";
  for (size_t a = 0; a < problem.arcs.size(); ++a) {
    const FlowArc& arc = problem.arcs[a];
    dot << "  n" << arc.tail << " -> n" << arc.head << " [label=\"";
    if (flow) dot << flow->flow[a] << "/";
    dot << arc.capacity << " @" << arc.cost << "\"];\n";
  }
  dot << "}\n";
  return dot.str();
}

}  // namespace evrc
