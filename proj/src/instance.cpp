#include "evrc/instance.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "evrc/error.hpp"
#include "json.hpp"

namespace evrc {

using Json = nlohmann::ordered_json;

const NetworkNode* RoadNetwork::find(const NodeId& id) const {
  for (const auto& node : nodes) {
    if (node.id == id) return &node;
  }
  return nullptr;
}

namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0; }

// g may be 0 (instantaneous charging), positive, or +inf (no charger).
bool valid_rate(double g) { return g == kNoCharger || finite_nonneg(g); }

void check_reachability(const InstanceSpec& instance) {
  if (instance.network.euclidean()) return;  // complete graph

  std::map<NodeId, std::vector<NodeId>> forward, backward;
  for (const auto& arc : instance.network.arcs) {
    forward[arc.from].push_back(arc.to);
    backward[arc.to].push_back(arc.from);
  }
  auto bfs = [](const std::map<NodeId, std::vector<NodeId>>& adj, const NodeId& start) {
    std::set<NodeId> seen{start};
    std::deque<NodeId> queue{start};
    while (!queue.empty()) {
      NodeId u = queue.front();
      queue.pop_front();
      auto it = adj.find(u);
      if (it == adj.end()) continue;
      for (const auto& v : it->second) {
        if (seen.insert(v).second) queue.push_back(v);
      }
    }
    return seen;
  };

  auto from_start = bfs(forward, instance.start_depot);
  auto to_end = bfs(backward, instance.end_depot);
  auto check = [&](const NodeId& id) {
    require(from_start.count(id) > 0, ErrorKind::Validation,
            "network: node '" + id + "' not reachable from start depot");
    require(to_end.count(id) > 0, ErrorKind::Validation,
            "network: node '" + id + "' cannot reach end depot");
  };
  check(instance.end_depot);
  for (const auto& request : instance.requests) check(request.node);
}

}  // namespace

void validate(const InstanceSpec& instance) {
  const auto& net = instance.network;
  require(!net.nodes.empty(), ErrorKind::Validation, "network.nodes: empty");

  std::set<NodeId> ids;
  for (size_t i = 0; i < net.nodes.size(); ++i) {
    require(ids.insert(net.nodes[i].id).second, ErrorKind::Validation,
            "network.nodes[" + std::to_string(i) + "].id: duplicate '" + net.nodes[i].id + "'");
  }
  for (size_t i = 0; i < net.arcs.size(); ++i) {
    const auto& arc = net.arcs[i];
    const std::string path = "network.arcs[" + std::to_string(i) + "]";
    require(ids.count(arc.from) > 0, ErrorKind::Validation, path + ".from: unknown node '" + arc.from + "'");
    require(ids.count(arc.to) > 0, ErrorKind::Validation, path + ".to: unknown node '" + arc.to + "'");
    require(finite_nonneg(arc.distance_km), ErrorKind::Validation, path + ".distance: must be >= 0");
  }

  require(ids.count(instance.start_depot) > 0, ErrorKind::Validation,
          "depots.start: unknown node '" + instance.start_depot + "'");
  require(ids.count(instance.end_depot) > 0, ErrorKind::Validation,
          "depots.end: unknown node '" + instance.end_depot + "'");
  require(instance.start_depot != instance.end_depot, ErrorKind::Validation,
          "depots: start and end must be distinct");

  std::set<NodeId> request_ids;
  double max_pickup = 0;
  for (size_t i = 0; i < instance.requests.size(); ++i) {
    const auto& request = instance.requests[i];
    const std::string path = "requests[" + std::to_string(i) + "]";
    require(ids.count(request.node) > 0, ErrorKind::Validation, path + ".node: unknown node '" + request.node + "'");
    require(request.node != instance.start_depot && request.node != instance.end_depot,
            ErrorKind::Validation, path + ".node: must be distinct from the depots");
    require(request_ids.insert(request.node).second, ErrorKind::Validation,
            path + ".node: duplicate request node '" + request.node + "'");
    require(finite_nonneg(request.pickup_time), ErrorKind::Validation, path + ".pickup_time: must be >= 0");
    require(finite_nonneg(request.revenue), ErrorKind::Validation, path + ".revenue: must be >= 0");
    require(valid_rate(request.charge_rate), ErrorKind::Validation, path + ".charge_rate: must be >= 0 or inf");
    require(finite_nonneg(request.charge_price), ErrorKind::Validation, path + ".charge_price: must be >= 0");
    max_pickup = std::max(max_pickup, request.pickup_time);
  }

  require(valid_rate(instance.depot_charge_rate), ErrorKind::Validation,
          "depot_charge_rate: must be >= 0 or inf");
  require(finite_nonneg(instance.depot_charge_price), ErrorKind::Validation,
          "depot_charge_price: must be >= 0");

  const auto& fleet = instance.fleet;
  require(fleet.count >= 1, ErrorKind::Validation, "fleet.count: must be >= 1");
  require(finite_nonneg(fleet.battery_kwh), ErrorKind::Validation, "fleet.e_max: must be >= 0");
  require(finite_nonneg(fleet.initial_kwh) && fleet.initial_kwh <= fleet.battery_kwh,
          ErrorKind::Validation, "fleet.e0: must satisfy 0 <= e0 <= e_max");
  require(finite_nonneg(fleet.usage_fee), ErrorKind::Validation, "fleet.usage_fee: must be >= 0");
  require(std::isfinite(fleet.consumption_kwh_per_km) && fleet.consumption_kwh_per_km > 0,
          ErrorKind::Validation, "fleet.consumption_rate: must be > 0");
  require(std::isfinite(fleet.speed_km_per_h) && fleet.speed_km_per_h > 0,
          ErrorKind::Validation, "fleet.speed: must be > 0");
  require(finite_nonneg(fleet.max_charge_kwh), ErrorKind::Validation, "fleet.r_max: must be >= 0");

  require(finite_nonneg(instance.weights.charge_time), ErrorKind::Validation, "weights.w1: must be >= 0");
  require(finite_nonneg(instance.weights.charge_cost), ErrorKind::Validation, "weights.w2: must be >= 0");
  require(finite_nonneg(instance.weights.travel_time), ErrorKind::Validation, "weights.w3: must be >= 0");
  require(finite_nonneg(instance.weights.usage), ErrorKind::Validation, "weights.w4: must be >= 0");

  require(finite_nonneg(instance.horizon) && instance.horizon >= max_pickup,
          ErrorKind::Validation, "horizon: must be >= max request pickup time");

  check_reachability(instance);
}

// --- canonical document ------------------------------------------------

namespace {

double rate_from_json(const Json& value, const std::string& path) {
  if (value.is_null()) return kNoCharger;
  if (value.is_string()) {
    require(value.get<std::string>() == "inf", ErrorKind::Format,
            path + ": expected number or \"inf\"");
    return kNoCharger;
  }
  require(value.is_number(), ErrorKind::Format, path + ": expected number or \"inf\"");
  return value.get<double>();
}

Json rate_to_json(double g) {
  if (g == kNoCharger) return "inf";
  return g;
}

const Json& member(const Json& object, const std::string& key, const std::string& path) {
  require(object.is_object(), ErrorKind::Format, path + ": expected object");
  auto it = object.find(key);
  require(it != object.end(), ErrorKind::Format, path + "." + key + ": missing");
  return *it;
}

double number(const Json& object, const std::string& key, const std::string& path) {
  const Json& value = member(object, key, path);
  require(value.is_number(), ErrorKind::Format, path + "." + key + ": expected number");
  return value.get<double>();
}

std::string text(const Json& object, const std::string& key, const std::string& path) {
  const Json& value = member(object, key, path);
  require(value.is_string(), ErrorKind::Format, path + "." + key + ": expected string");
  return value.get<std::string>();
}

ChargerSpec charger_from_json(const Json& value, const std::string& path) {
  ChargerSpec spec;
  spec.rate = rate_from_json(member(value, "g", path), path + ".g");
  spec.price = number(value, "p", path);
  return spec;
}

Json charger_to_json(const ChargerSpec& spec) {
  Json j;
  j["g"] = rate_to_json(spec.rate);
  j["p"] = spec.price;
  return j;
}

ChargerPolicy chargers_from_json(const Json& value) {
  ChargerPolicy policy;
  const std::string kind = text(value, "policy", "chargers");
  if (kind == "uniform") {
    policy.kind = ChargerPolicy::Kind::Uniform;
    policy.uniform = charger_from_json(value, "chargers");
  } else if (kind == "alternate-by-index") {
    policy.kind = ChargerPolicy::Kind::AlternateByIndex;
    policy.fast.rate = rate_from_json(member(value, "g_fast", "chargers"), "chargers.g_fast");
    policy.fast.price = number(value, "p_fast", "chargers");
    policy.slow.rate = rate_from_json(member(value, "g_slow", "chargers"), "chargers.g_slow");
    policy.slow.price = number(value, "p_slow", "chargers");
  } else if (kind == "explicit-per-node") {
    policy.kind = ChargerPolicy::Kind::ExplicitPerNode;
    policy.uniform = charger_from_json(member(value, "default", "chargers"), "chargers.default");
    if (value.contains("nodes")) {
      const Json& nodes = value.at("nodes");
      require(nodes.is_object(), ErrorKind::Format, "chargers.nodes: expected object");
      for (auto it = nodes.begin(); it != nodes.end(); ++it) {
        policy.overrides[it.key()] = charger_from_json(it.value(), "chargers.nodes." + it.key());
      }
    }
  } else {
    fail(ErrorKind::Format, "chargers.policy: unknown policy '" + kind + "'");
  }
  if (value.contains("depot")) {
    policy.depot = charger_from_json(value.at("depot"), "chargers.depot");
  }
  return policy;
}

Json chargers_to_json(const ChargerPolicy& policy) {
  Json j;
  switch (policy.kind) {
    case ChargerPolicy::Kind::Uniform:
      j["policy"] = "uniform";
      j["g"] = rate_to_json(policy.uniform.rate);
      j["p"] = policy.uniform.price;
      break;
    case ChargerPolicy::Kind::AlternateByIndex:
      j["policy"] = "alternate-by-index";
      j["g_fast"] = rate_to_json(policy.fast.rate);
      j["p_fast"] = policy.fast.price;
      j["g_slow"] = rate_to_json(policy.slow.rate);
      j["p_slow"] = policy.slow.price;
      break;
    case ChargerPolicy::Kind::ExplicitPerNode:
      j["policy"] = "explicit-per-node";
      j["default"] = charger_to_json(policy.uniform);
      if (!policy.overrides.empty()) {
        Json nodes;
        for (const auto& [id, spec] : policy.overrides) nodes[id] = charger_to_json(spec);
        j["nodes"] = nodes;
      }
      break;
  }
  if (policy.depot) j["depot"] = charger_to_json(*policy.depot);
  return j;
}

}  // namespace

InstanceSpec load_instance(const std::string& document) {
  Json root;
  try {
    root = Json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Format, std::string("instance document: ") + e.what());
  }
  require(root.is_object(), ErrorKind::Format, "instance document: expected object");

  InstanceSpec instance;
  if (root.contains("id")) instance.id = text(root, "id", "");

  const Json& network = member(root, "network", "");
  const Json& nodes = member(network, "nodes", "network");
  require(nodes.is_array(), ErrorKind::Format, "network.nodes: expected array");
  for (size_t i = 0; i < nodes.size(); ++i) {
    const std::string path = "network.nodes[" + std::to_string(i) + "]";
    NetworkNode node;
    node.id = text(nodes[i], "id", path);
    node.x = number(nodes[i], "x", path);
    node.y = number(nodes[i], "y", path);
    instance.network.nodes.push_back(node);
  }
  if (network.contains("arcs")) {
    const Json& arcs = network.at("arcs");
    require(arcs.is_array(), ErrorKind::Format, "network.arcs: expected array");
    for (size_t i = 0; i < arcs.size(); ++i) {
      const std::string path = "network.arcs[" + std::to_string(i) + "]";
      NetworkArc arc;
      arc.from = text(arcs[i], "from", path);
      arc.to = text(arcs[i], "to", path);
      arc.distance_km = number(arcs[i], "distance", path);
      instance.network.arcs.push_back(arc);
    }
  }

  const Json& depots = member(root, "depots", "");
  instance.start_depot = text(depots, "start", "depots");
  instance.end_depot = text(depots, "end", "depots");

  const Json& requests = member(root, "requests", "");
  require(requests.is_array(), ErrorKind::Format, "requests: expected array");
  for (size_t i = 0; i < requests.size(); ++i) {
    const std::string path = "requests[" + std::to_string(i) + "]";
    RequestSpec request;
    request.node = text(requests[i], "node", path);
    request.pickup_time = number(requests[i], "pickup_time", path);
    request.revenue = number(requests[i], "revenue", path);
    if (requests[i].contains("charge_rate")) {
      request.charge_rate = rate_from_json(requests[i].at("charge_rate"), path + ".charge_rate");
    }
    if (requests[i].contains("charge_price")) {
      request.charge_price = number(requests[i], "charge_price", path);
    }
    instance.requests.push_back(request);
  }

  const Json& fleet = member(root, "fleet", "");
  instance.fleet.count = static_cast<int>(number(fleet, "count", "fleet"));
  instance.fleet.battery_kwh = number(fleet, "e_max", "fleet");
  instance.fleet.initial_kwh = number(fleet, "e0", "fleet");
  instance.fleet.usage_fee = number(fleet, "usage_fee", "fleet");
  instance.fleet.consumption_kwh_per_km = number(fleet, "consumption_rate", "fleet");
  instance.fleet.speed_km_per_h = number(fleet, "speed", "fleet");
  instance.fleet.max_charge_kwh = number(fleet, "r_max", "fleet");

  const Json& weights = member(root, "weights", "");
  instance.weights.charge_time = number(weights, "w1", "weights");
  instance.weights.charge_cost = number(weights, "w2", "weights");
  instance.weights.travel_time = number(weights, "w3", "weights");
  instance.weights.usage = number(weights, "w4", "weights");

  instance.horizon = number(root, "horizon", "");

  if (root.contains("chargers")) {
    const ChargerPolicy policy = chargers_from_json(root.at("chargers"));
    instance = assign_chargers(std::move(instance), policy);
  }

  // Per-request rates, when present, override the policy outcome.
  for (size_t i = 0; i < requests.size(); ++i) {
    if (requests[i].contains("charge_rate")) {
      instance.requests[i].charge_rate =
          rate_from_json(requests[i].at("charge_rate"), "requests.charge_rate");
    }
    if (requests[i].contains("charge_price")) {
      instance.requests[i].charge_price = requests[i].at("charge_price").get<double>();
    }
  }
  if (root.contains("depot_charge_rate")) {
    instance.depot_charge_rate = rate_from_json(root.at("depot_charge_rate"), "depot_charge_rate");
  }
  if (root.contains("depot_charge_price")) {
    instance.depot_charge_price = number(root, "depot_charge_price", "");
  }

  validate(instance);
  return instance;
}

InstanceSpec load_instance_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::Usage, "cannot open instance file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_instance(buffer.str());
}

std::string save_instance(const InstanceSpec& instance) {
  Json root;
  root["id"] = instance.id;
  Json nodes = Json::array();
  for (const auto& node : instance.network.nodes) {
    nodes.push_back(Json{{"id", node.id}, {"x", node.x}, {"y", node.y}});
  }
  root["network"] = Json{{"nodes", nodes}};
  if (!instance.network.arcs.empty()) {
    Json arcs = Json::array();
    for (const auto& arc : instance.network.arcs) {
      arcs.push_back(Json{{"from", arc.from}, {"to", arc.to}, {"distance", arc.distance_km}});
    }
    root["network"]["arcs"] = arcs;
  }
  root["depots"] = Json{{"start", instance.start_depot}, {"end", instance.end_depot}};
  Json requests = Json::array();
  for (const auto& request : instance.requests) {
    Json r;
    r["node"] = request.node;
    r["pickup_time"] = request.pickup_time;
    r["revenue"] = request.revenue;
    r["charge_rate"] = rate_to_json(request.charge_rate);
    r["charge_price"] = request.charge_price;
    requests.push_back(r);
  }
  root["requests"] = requests;
  root["chargers"] = chargers_to_json(instance.chargers);
  root["depot_charge_rate"] = rate_to_json(instance.depot_charge_rate);
  root["depot_charge_price"] = instance.depot_charge_price;
  root["fleet"] = Json{{"count", instance.fleet.count},
                       {"e_max", instance.fleet.battery_kwh},
                       {"e0", instance.fleet.initial_kwh},
                       {"usage_fee", instance.fleet.usage_fee},
                       {"consumption_rate", instance.fleet.consumption_kwh_per_km},
                       {"speed", instance.fleet.speed_km_per_h},
                       {"r_max", instance.fleet.max_charge_kwh}};
  root["weights"] = Json{{"w1", instance.weights.charge_time},
                         {"w2", instance.weights.charge_cost},
                         {"w3", instance.weights.travel_time},
                         {"w4", instance.weights.usage}};
  root["horizon"] = instance.horizon;
  return root.dump(2) + "\n";
}

// --- Solomon-style tables ----------------------------------------------

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream stream(line);
  std::string token;
  while (stream >> token) tokens.push_back(token);
  return tokens;
}

double numeric_cell(const std::string& cell, size_t row, const std::string& column) {
  char* end = nullptr;
  double value = std::strtod(cell.c_str(), &end);
  require(end == cell.c_str() + cell.size() && !cell.empty(), ErrorKind::Format,
          "table row " + std::to_string(row) + ": non-numeric value '" + cell +
              "' in column " + column);
  return value;
}

}  // namespace

std::vector<SolomonRecord> parse_solomon_table(const std::string& text,
                                               const SolomonColumnMap& columns) {
  std::vector<std::string> lines;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);

  size_t first = 0;
  while (first < lines.size() && tokens_of(lines[first]).empty()) ++first;
  require(first < lines.size(), ErrorKind::Format, "table: missing header row");

  const std::vector<std::string> header = tokens_of(lines[first]);
  auto column_of = [&](const std::string& name) -> size_t {
    auto it = std::find(header.begin(), header.end(), name);
    require(it != header.end(), ErrorKind::Format, "table header: missing column '" + name + "'");
    return static_cast<size_t>(it - header.begin());
  };
  const size_t x_col = column_of(columns.x);
  const size_t y_col = column_of(columns.y);
  const size_t t_col = column_of(columns.ready_time);
  const size_t id_col = static_cast<size_t>(columns.id_column);

  std::vector<SolomonRecord> records;
  size_t row = 0;
  for (size_t i = first + 1; i < lines.size(); ++i) {
    const std::vector<std::string> cells = tokens_of(lines[i]);
    if (cells.empty()) continue;
    ++row;
    const size_t needed = std::max({x_col, y_col, t_col, id_col}) + 1;
    require(cells.size() >= needed, ErrorKind::Format,
            "table row " + std::to_string(row) + ": expected at least " +
                std::to_string(needed) + " columns, got " + std::to_string(cells.size()));
    SolomonRecord record;
    record.id = cells[id_col];
    record.x = numeric_cell(cells[x_col], row, columns.x);
    record.y = numeric_cell(cells[y_col], row, columns.y);
    record.ready_time = numeric_cell(cells[t_col], row, columns.ready_time);
    records.push_back(record);
  }
  return records;
}

// --- charger assignment -------------------------------------------------

InstanceSpec assign_chargers(InstanceSpec instance, const ChargerPolicy& policy) {
  if (policy.kind == ChargerPolicy::Kind::ExplicitPerNode) {
    for (const auto& [id, spec] : policy.overrides) {
      (void)spec;
      const bool known = id == instance.start_depot ||
                         std::any_of(instance.requests.begin(), instance.requests.end(),
                                     [&](const RequestSpec& r) { return r.node == id; });
      require(known, ErrorKind::Validation,
              "chargers.nodes: unknown node id '" + id + "'");
    }
  }

  auto spec_for = [&](const NodeId& id, size_t index) -> ChargerSpec {
    switch (policy.kind) {
      case ChargerPolicy::Kind::Uniform:
        return policy.uniform;
      case ChargerPolicy::Kind::AlternateByIndex:
        return index % 2 == 0 ? policy.fast : policy.slow;
      case ChargerPolicy::Kind::ExplicitPerNode: {
        auto it = policy.overrides.find(id);
        return it != policy.overrides.end() ? it->second : policy.uniform;
      }
    }
    return policy.uniform;
  };

  for (size_t i = 0; i < instance.requests.size(); ++i) {
    const ChargerSpec spec = spec_for(instance.requests[i].node, i);
    instance.requests[i].charge_rate = spec.rate;
    instance.requests[i].charge_price = spec.price;
  }

  ChargerSpec depot;
  if (policy.depot) {
    depot = *policy.depot;
  } else if (policy.kind == ChargerPolicy::Kind::AlternateByIndex) {
    depot = policy.fast;
  } else if (policy.kind == ChargerPolicy::Kind::ExplicitPerNode) {
    auto it = policy.overrides.find(instance.start_depot);
    depot = it != policy.overrides.end() ? it->second : policy.uniform;
  } else {
    depot = policy.uniform;
  }
  instance.depot_charge_rate = depot.rate;
  instance.depot_charge_price = depot.price;
  instance.chargers = policy;
  return instance;
}

// --- presets -------------------------------------------------------------

namespace {

std::vector<ParameterPreset> build_presets() {
  std::vector<ParameterPreset> presets;

  ParameterPreset c200;
  c200.name = "paper-table1-c200";
  c200.fleet = {2, 100.0, 70.0, 200.0, 0.23, 18.0, 100.0};
  c200.chargers.kind = ChargerPolicy::Kind::AlternateByIndex;
  c200.chargers.fast = {1.0 / 12.0, 1.0 / 12.0};
  c200.chargers.slow = {36.67 / 60.0, 1.0 / 12.0};
  c200.revenue = 10.0;
  presets.push_back(c200);

  ParameterPreset c500 = c200;
  c500.name = "paper-table1-c500";
  c500.fleet.usage_fee = 500.0;
  presets.push_back(c500);

  ParameterPreset belgium;
  belgium.name = "belgium";
  belgium.fleet = {2, 90.0, 0.7 * 90.0, 1299.0, 0.24, 90.0, 90.0};
  belgium.chargers.kind = ChargerPolicy::Kind::AlternateByIndex;
  belgium.chargers.fast = {60.0 / 22.0, 0.299};  // 22 kW station
  belgium.chargers.slow = {60.0 / 3.0, 0.129};   // 3 kW station
  belgium.revenue = 9.05;
  presets.push_back(belgium);

  return presets;
}

const std::vector<ParameterPreset>& presets() {
  static const std::vector<ParameterPreset> all = build_presets();
  return all;
}

}  // namespace

const ParameterPreset* find_preset(const std::string& name) {
  for (const auto& preset : presets()) {
    if (preset.name == name) return &preset;
  }
  return nullptr;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& preset : presets()) names.push_back(preset.name);
  return names;
}

double generous_horizon(const InstanceSpec& instance) {
  double max_pickup = 0;
  for (const auto& request : instance.requests) {
    max_pickup = std::max(max_pickup, request.pickup_time);
  }

  // Upper bound on any single-leg travel time.
  double reach_km = 0;
  if (instance.network.euclidean()) {
    for (const auto& a : instance.network.nodes) {
      for (const auto& b : instance.network.nodes) {
        reach_km = std::max(reach_km, std::hypot(a.x - b.x, a.y - b.y));
      }
    }
  } else {
    for (const auto& arc : instance.network.arcs) reach_km += arc.distance_km;
  }
  const double travel_bound = 60.0 * reach_km / instance.fleet.speed_km_per_h;

  double max_rate = 0;
  auto consider = [&](double g) {
    if (g != kNoCharger) max_rate = std::max(max_rate, g);
  };
  consider(instance.depot_charge_rate);
  for (const auto& request : instance.requests) consider(request.charge_rate);

  return max_pickup + travel_bound + max_rate * instance.fleet.battery_kwh + 60.0;
}

}  // namespace evrc
