#include "evrc/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "evrc/error.hpp"

namespace evrc {

namespace {

// Hand-rolled draws keep generated instances identical across standard
// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed ^ 0x9e3779b97f4a7c15ULL) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    // Box-Muller.
    const double u = std::max(uniform(), 1e-300);
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
  }

  int below(int n) { return static_cast<int>(uniform() * n) % n; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

InstanceSpec generate_instance(const GeneratorConfig& config) {
  require(config.request_count >= 0, ErrorKind::Usage, "generator: request_count must be >= 0");
  require(config.fleet_size >= 1, ErrorKind::Usage, "generator: fleet_size must be >= 1");
  require(config.cluster_count >= 1, ErrorKind::Usage, "generator: cluster_count must be >= 1");

  Rng rng(config.seed * 1000003ULL + static_cast<std::uint64_t>(config.request_count));

  InstanceSpec instance;
  instance.id = config.id_prefix + "-r" + std::to_string(config.request_count) + "-s" +
                std::to_string(config.seed);

  const double mid_y = config.corridor_km / 2.0;
  instance.network.nodes.push_back({"d0", 0.0, mid_y});
  instance.network.nodes.push_back({"d1", config.corridor_km, mid_y});
  instance.start_depot = "d0";
  instance.end_depot = "d1";

  // Cluster centers spread along the corridor, slightly off the line.
  std::vector<std::pair<double, double>> clusters;
  for (int c = 0; c < config.cluster_count; ++c) {
    const double along = config.corridor_km *
                         ((c + rng.uniform(0.25, 0.75)) / config.cluster_count);
    const double off = rng.uniform(-config.cluster_offset_km, config.cluster_offset_km);
    clusters.push_back({along, mid_y + off});
  }

  const double speed = config.speed_km_per_h;
  for (int r = 0; r < config.request_count; ++r) {
    const auto& cluster = clusters[static_cast<size_t>(r % config.cluster_count)];
    const double x = std::clamp(cluster.first + config.cluster_sigma_km * rng.normal(), 0.0,
                                config.corridor_km);
    const double y = cluster.second + config.cluster_sigma_km * rng.normal();

    const NodeId id = "r" + std::to_string(r);
    instance.network.nodes.push_back({id, x, y});

    const double depot_min = 60.0 * std::hypot(x - 0.0, y - mid_y) / speed;
    RequestSpec request;
    request.node = id;
    request.pickup_time = depot_min * rng.uniform(config.slack_lo, config.slack_hi) +
                          rng.uniform(config.jitter_min, config.jitter_max);
    request.revenue = config.revenue;
    instance.requests.push_back(request);
  }

  instance.fleet.count = config.fleet_size;
  instance.fleet.battery_kwh = config.battery_kwh;
  instance.fleet.initial_kwh = config.initial_fraction * config.battery_kwh;
  instance.fleet.usage_fee = config.usage_fee;
  instance.fleet.consumption_kwh_per_km = config.consumption_kwh_per_km;
  instance.fleet.speed_km_per_h = config.speed_km_per_h;
  instance.fleet.max_charge_kwh = config.battery_kwh;

  ChargerPolicy policy;
  policy.kind = ChargerPolicy::Kind::AlternateByIndex;
  policy.fast = {config.fast_rate, config.price};
  policy.slow = {config.slow_rate, config.price};
  instance = assign_chargers(std::move(instance), policy);

  instance.horizon = generous_horizon(instance);
  validate(instance);
  return instance;
}

}  // namespace evrc
