#pragma once

#include <string>
#include <vector>

#include "evrc/instance.hpp"

namespace evrc::testing {

inline std::string data_path(const std::string& name) {
  return std::string(EVRC_SOURCE_DIR) + "/data/" + name;
}

/// Two requests on a line, instantaneous chargers, zero usage fee. The
/// optimal plan serves both with one vehicle at objective -25.
inline InstanceSpec micro4() {
  InstanceSpec instance;
  instance.id = "micro4";
  instance.network.nodes = {{"v1", 0, 0}, {"a", 10, 0}, {"b", 20, 0}, {"vn", 35, 0}};
  instance.start_depot = "v1";
  instance.end_depot = "vn";
  instance.requests = {{"a", 15, 30, 0.0, 1.0 / 12}, {"b", 25, 30, 0.0, 1.0 / 12}};
  instance.depot_charge_rate = 0.0;
  instance.depot_charge_price = 1.0 / 12;
  instance.fleet = {1, 100, 70, 0, 1.0, 60, 100};
  instance.horizon = 60;
  instance.chargers.kind = ChargerPolicy::Kind::Uniform;
  instance.chargers.uniform = {0.0, 1.0 / 12};
  return instance;
}

/// Paper-style baseline parameters on a small node set.
inline InstanceSpec table1_baseline() {
  InstanceSpec instance;
  instance.id = "baseline";
  instance.network.nodes = {{"d0", 0, 0}, {"d1", 1, 0}, {"r0", 2, 2}, {"r1", 3, 1}};
  instance.start_depot = "d0";
  instance.end_depot = "d1";
  instance.requests = {{"r0", 60, 10}, {"r1", 90, 10}};
  instance.fleet = {2, 100, 70, 200, 0.23, 18, 100};
  instance.horizon = 2000;
  ChargerPolicy policy;
  policy.kind = ChargerPolicy::Kind::AlternateByIndex;
  policy.fast = {1.0 / 12, 1.0 / 12};
  policy.slow = {36.67 / 60, 1.0 / 12};
  return assign_chargers(std::move(instance), policy);
}

}  // namespace evrc::testing
