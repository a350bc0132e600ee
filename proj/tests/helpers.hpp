#pragma once

#include <utility>
#include <vector>

#include "athn/instance.hpp"
#include "athn/network.hpp"
#include "athn/task_graph.hpp"

// Shared builders for hand-crafted fixtures.
namespace helpers {

inline athn::Params small_params() {
  athn::Params p;
  p.alpha = 0.25;
  p.beta = 0.2;
  p.gamma = 0.4;
  p.delta_minutes = 60;
  p.sigma_minutes = 30;
  p.num_trucks = 4;
  p.num_hubs = 2;
  p.horizon_minutes = 1440;
  p.speed_mph = 60.0;
  return p;
}

inline athn::Instance hand_instance(std::vector<athn::Load> loads,
                                    athn::Params params = small_params()) {
  athn::Instance instance;
  instance.loads = std::move(loads);
  for (std::size_t i = 0; i < instance.loads.size(); ++i)
    instance.loads[i].id = static_cast<int>(i);
  instance.params = params;
  instance.seed = 1;
  return instance;
}

inline std::vector<athn::Hub> hubs_at(std::vector<athn::GeoPoint> points) {
  std::vector<athn::Hub> hubs;
  for (std::size_t i = 0; i < points.size(); ++i)
    hubs.push_back({static_cast<int>(i), points[i]});
  return hubs;
}

inline athn::TaskGraph graph_with_hubs(const athn::Instance& instance,
                                       std::vector<athn::GeoPoint> hub_points) {
  auto hubs = hubs_at(std::move(hub_points));
  return athn::build_graph(athn::build_tasks(instance, hubs), hubs, instance);
}

/// Seeded small instance for oracle comparisons: clustered geography, short
/// horizon so tasks actually interact.
inline athn::Instance random_small(std::uint64_t seed, int num_loads, int num_hubs,
                                   int horizon = 1440) {
  athn::GeneratorConfig config;
  config.num_loads = num_loads;
  config.num_regions = 2;
  config.region_spread_miles = 40.0;
  config.horizon_minutes = horizon;
  config.bounding_box_x_miles = 400.0;
  config.bounding_box_y_miles = 300.0;
  athn::Params params = small_params();
  params.num_hubs = num_hubs;
  params.horizon_minutes = horizon;
  return athn::generate_synthetic(config, params, seed);
}

inline athn::TaskGraph random_small_graph(std::uint64_t seed, int num_loads, int num_hubs,
                                          int horizon = 1440) {
  const athn::Instance instance = random_small(seed, num_loads, num_hubs, horizon);
  const auto hubs = athn::kmeans_hubs(instance, num_hubs, seed);
  return athn::build_graph(athn::build_tasks(instance, hubs), hubs, instance);
}

}  // namespace helpers
