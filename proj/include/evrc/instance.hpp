#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace evrc {

using NodeId = std::string;

/// Charge rate assigned to nodes without a charging facility.
constexpr double kNoCharger = std::numeric_limits<double>::infinity();

struct NetworkNode {
  NodeId id;
  double x = 0;  // km
  double y = 0;  // km
};

struct NetworkArc {
  NodeId from;
  NodeId to;
  double distance_km = 0;
};

/// Road graph G. When `arcs` is empty the graph is treated as complete with
/// Euclidean distances over node coordinates.
struct RoadNetwork {
  std::vector<NetworkNode> nodes;
  std::vector<NetworkArc> arcs;

  bool euclidean() const { return arcs.empty(); }
  const NetworkNode* find(const NodeId& id) const;
};

struct RequestSpec {
  NodeId node;
  double pickup_time = 0;              // t_i, minutes from horizon start
  double revenue = 0;                  // M_i, currency
  double charge_rate = kNoCharger;     // g_i, minutes per kWh
  double charge_price = 0;             // p_i, currency per kWh
};

struct FleetSpec {
  int count = 1;                       // K
  double battery_kwh = 0;              // E_max
  double initial_kwh = 0;              // E_0
  double usage_fee = 0;                // c_v
  double consumption_kwh_per_km = 0;   // epsilon
  double speed_km_per_h = 0;
  double max_charge_kwh = 0;           // r_max, per stop
};

struct Weights {
  double charge_time = 1;   // w1
  double charge_cost = 1;   // w2
  double travel_time = 1;   // w3
  double usage = 1;         // w4
};

struct ChargerSpec {
  double rate = kNoCharger;  // g, min per kWh
  double price = 0;          // p, currency per kWh
};

/// Deterministic charger assignment policy over the request list.
struct ChargerPolicy {
  enum class Kind { Uniform, AlternateByIndex, ExplicitPerNode };

  Kind kind = Kind::Uniform;
  ChargerSpec uniform;                       // Uniform + Explicit default
  ChargerSpec fast, slow;                    // AlternateByIndex
  std::map<NodeId, ChargerSpec> overrides;   // ExplicitPerNode
  std::optional<ChargerSpec> depot;          // start depot; defaults below
};

struct InstanceSpec {
  std::string id = "instance";
  RoadNetwork network;
  NodeId start_depot;                  // v_1
  NodeId end_depot;                    // v_n
  std::vector<RequestSpec> requests;
  double depot_charge_rate = kNoCharger;  // g at v_1
  double depot_charge_price = 0;          // p at v_1
  FleetSpec fleet;
  Weights weights;
  double horizon = 0;                  // finite stand-in for t_{v_n}, minutes
  ChargerPolicy chargers;              // retained for round-trips
};

/// Validates every structural invariant; throws Error{Validation} with the
/// offending field path.
void validate(const InstanceSpec& instance);

InstanceSpec load_instance(const std::string& text);
InstanceSpec load_instance_file(const std::string& path);
std::string save_instance(const InstanceSpec& instance);

struct SolomonRecord {
  std::string id;
  double x = 0;
  double y = 0;
  double ready_time = 0;
};

/// Header names of the columns to extract. The id is taken from `id_column`
/// (0-based) of each data row.
struct SolomonColumnMap {
  std::string x = "x";
  std::string y = "y";
  std::string ready_time = "ReadyTime";
  int id_column = 0;
};

/// Parses a whitespace-delimited table whose first non-blank line is a header
/// row. Ready times are copied verbatim as pickup minutes.
std::vector<SolomonRecord> parse_solomon_table(const std::string& text,
                                               const SolomonColumnMap& columns = {});

/// Applies the charger policy to every request node and the start depot.
/// Pure: identical inputs produce identical output.
InstanceSpec assign_chargers(InstanceSpec instance, const ChargerPolicy& policy);

/// Named fleet/charger parameter sets used by the `convert` subcommand.
struct ParameterPreset {
  std::string name;
  FleetSpec fleet;
  ChargerPolicy chargers;
  double revenue = 0;  // M_i applied to every request
  Weights weights;
};

const ParameterPreset* find_preset(const std::string& name);
std::vector<std::string> preset_names();

/// Horizon large enough that the end depot deadline can never bind: any node
/// can be left as late as its pickup plus a full-battery charge and still
/// "arrive" at v_n within the horizon.
double generous_horizon(const InstanceSpec& instance);

}  // namespace evrc
