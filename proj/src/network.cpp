#include "athn/network.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "athn/errors.hpp"

namespace athn {

namespace {

double squared_distance(const GeoPoint& a, const GeoPoint& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

std::vector<GeoPoint> endpoint_cloud(const Instance& instance) {
  std::vector<GeoPoint> points;
  points.reserve(2 * instance.loads.size());
  for (const Load& load : instance.loads) {
    points.push_back(load.origin);
    points.push_back(load.destination);
  }
  return points;
}

// k-means++ seeding: first center uniform, then proportional to squared
// distance from the nearest chosen center.
std::vector<GeoPoint> seed_centers(const std::vector<GeoPoint>& points, int k,
                                   std::mt19937_64& rng) {
  std::vector<GeoPoint> centers;
  centers.reserve(static_cast<std::size_t>(k));
  std::uniform_int_distribution<std::size_t> first(0, points.size() - 1);
  centers.push_back(points[first(rng)]);

  std::vector<double> best(points.size());
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      double d = std::numeric_limits<double>::infinity();
      for (const GeoPoint& c : centers) d = std::min(d, squared_distance(points[i], c));
      best[i] = d;
      total += d;
    }
    std::size_t chosen = 0;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      double target = u(rng);
      double acc = 0.0;
      chosen = points.size() - 1;
      for (std::size_t i = 0; i < points.size(); ++i) {
        acc += best[i];
        if (acc >= target) {
          chosen = i;
          break;
        }
      }
    } else {
      // all remaining mass at existing centers; duplicates collapse later
      std::uniform_int_distribution<std::size_t> any(0, points.size() - 1);
      chosen = any(rng);
    }
    centers.push_back(points[chosen]);
  }
  return centers;
}

}  // namespace

std::vector<Hub> kmeans_hubs(const Instance& instance, int num_hubs, std::uint64_t seed,
                             int max_iters, double tol,
                             std::vector<double>* objective_trace) {
  if (num_hubs < 1) throw ConfigError("kmeans: num_hubs must be >= 1");
  const std::vector<GeoPoint> points = endpoint_cloud(instance);

  std::set<std::pair<double, double>> distinct;
  for (const GeoPoint& p : points) distinct.insert({p.x, p.y});
  if (static_cast<std::size_t>(num_hubs) > distinct.size())
    throw ConfigError("kmeans: num_hubs exceeds the number of distinct endpoint locations");

  std::mt19937_64 rng(seed);
  std::vector<GeoPoint> centers = seed_centers(points, num_hubs, rng);
  std::vector<int> assignment(points.size(), 0);

  for (int iter = 0; iter < max_iters; ++iter) {
    double objective = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      int arg = 0;
      for (int c = 0; c < num_hubs; ++c) {
        const double d = squared_distance(points[i], centers[static_cast<std::size_t>(c)]);
        if (d < best) {
          best = d;
          arg = c;
        }
      }
      assignment[i] = arg;
      objective += best;
    }
    if (objective_trace) objective_trace->push_back(objective);

    std::vector<double> sx(static_cast<std::size_t>(num_hubs), 0.0);
    std::vector<double> sy(static_cast<std::size_t>(num_hubs), 0.0);
    std::vector<long> count(static_cast<std::size_t>(num_hubs), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto c = static_cast<std::size_t>(assignment[i]);
      sx[c] += points[i].x;
      sy[c] += points[i].y;
      ++count[c];
    }

    double max_move = 0.0;
    for (int c = 0; c < num_hubs; ++c) {
      const auto ci = static_cast<std::size_t>(c);
      GeoPoint next;
      if (count[ci] > 0) {
        next = {sx[ci] / static_cast<double>(count[ci]), sy[ci] / static_cast<double>(count[ci])};
      } else {
        // reseed an empty cluster to the point farthest from its centroid
        double far = -1.0;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
          const double d =
              squared_distance(points[i], centers[static_cast<std::size_t>(assignment[i])]);
          if (d > far) {
            far = d;
            arg = i;
          }
        }
        next = points[arg];
      }
      max_move = std::max(max_move, std::sqrt(squared_distance(centers[ci], next)));
      centers[ci] = next;
    }
    if (max_move < tol) break;
  }

  std::vector<Hub> hubs;
  hubs.reserve(static_cast<std::size_t>(num_hubs));
  for (int c = 0; c < num_hubs; ++c)
    hubs.push_back(Hub{c, centers[static_cast<std::size_t>(c)]});
  return hubs;
}

std::pair<int, int> assign_hubs(const Load& load, std::span<const Hub> hubs, double gamma) {
  double best = std::numeric_limits<double>::infinity();
  std::pair<int, int> arg{0, 0};
  for (const Hub& origin_hub : hubs) {
    const double first = distance(load.origin, origin_hub.location);
    for (const Hub& dest_hub : hubs) {
      const double cost = first +
                          (1.0 - gamma) * distance(origin_hub.location, dest_hub.location) +
                          distance(dest_hub.location, load.destination);
      if (cost < best) {
        best = cost;
        arg = {origin_hub.id, dest_hub.id};
      }
    }
  }
  return arg;
}

std::vector<Task> build_tasks(const Instance& instance, std::span<const Hub> hubs) {
  std::vector<Task> tasks;
  tasks.reserve(instance.loads.size());
  for (const Load& load : instance.loads) {
    const auto [h_plus, h_minus] = assign_hubs(load, hubs, instance.params.gamma);
    tasks.push_back(Task{load.id, load.id, h_plus, h_minus, load.release_time});
  }
  return tasks;
}

}  // namespace athn
