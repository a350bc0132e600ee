#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "athn/instance.hpp"

namespace athn {

struct Hub {
  int id = 0;
  GeoPoint location;
};

/// One load's autonomous leg between hubs, with desired pickup time p.
struct Task {
  int id = 0;        // equals the load id
  int load = 0;      // load id
  int origin_hub = 0;   // h+
  int dest_hub = 0;     // h-
  int pickup_minute = 0;  // p_t
};

/// Lloyd's algorithm with k-means++ seeding over all load endpoints.
/// Empty clusters are reseeded to the point farthest from its centroid.
/// Deterministic for a fixed seed.
std::vector<Hub> kmeans_hubs(const Instance& instance, int num_hubs, std::uint64_t seed,
                             int max_iters = 100, double tol = 1e-6,
                             std::vector<double>* objective_trace = nullptr);

/// Hub pair minimizing dist(o,h+) + (1-gamma)*dist(h+,h-) + dist(h-,d),
/// ties broken by lowest (h+ id, h- id).
std::pair<int, int> assign_hubs(const Load& load, std::span<const Hub> hubs, double gamma);

/// One task per load; p_t = release_time, hubs from assign_hubs.
std::vector<Task> build_tasks(const Instance& instance, std::span<const Hub> hubs);

}  // namespace athn
