#pragma once

#include <cstdint>
#include <string>

#include "evrc/instance.hpp"

namespace evrc {

/// Random instance family: a start/end depot corridor with tight request
/// clusters strung along it. The corridor is longer than the initial battery
/// range, so en-route charging genuinely binds; clusters sit close to the
/// line so serving them is worth the detour. Pickup times grow with distance
/// from the start depot plus jitter. Not drawn from any published dataset;
/// constants documented in the README.
struct GeneratorConfig {
  int request_count = 8;
  std::uint64_t seed = 0;
  int fleet_size = 2;

  double corridor_km = 330;      // start depot at x=0, end depot at x=corridor
  int cluster_count = 3;
  double cluster_sigma_km = 1.6; // in-cluster spread
  double cluster_offset_km = 4;  // max distance of a cluster center off the line
  double slack_lo = 1.02;        // pickup = travel-from-depot * slack + jitter
  double slack_hi = 1.35;
  double jitter_min = 0;
  double jitter_max = 25;

  // Fleet and charger parameters; defaults match the benchmark family used
  // in the acceptance suite.
  double battery_kwh = 100;
  double initial_fraction = 0.7;
  double usage_fee = 200;
  double consumption_kwh_per_km = 0.23;
  double speed_km_per_h = 18;
  double revenue = 10;
  double fast_rate = 1.0 / 12.0;   // min per kWh
  double slow_rate = 36.67 / 60.0;
  double price = 1.0 / 12.0;       // currency per kWh, both charger kinds

  std::string id_prefix = "gen";
};

InstanceSpec generate_instance(const GeneratorConfig& config);

}  // namespace evrc
