#pragma once

#include <vector>

#include "athn/instance.hpp"
#include "athn/network.hpp"

namespace athn {

/// Arc in the task graph. Vertex numbering: 0 = source, task t = t+1,
/// sink = |T|+1. cost is the cost differential c_a in miles.
struct Arc {
  int from = 0;
  int to = 0;
  int tau = 0;       // minutes
  double cost = 0.0;  // miles, may be negative
};

/// Successor entry in a task's adjacency list (task-to-task arcs only).
struct Succ {
  int task = 0;
  int tau = 0;
  double cost = 0.0;
};

/// 2 * distance(origin, destination): delivery plus empty return.
double direct_cost(const Task& task, const Instance& instance);

/// firstlast/(1-beta) + alpha * dist(h+,h-), where firstlast is the loaded
/// first/last mileage dist(o,h+) + dist(h-,d).
double autonomous_service_cost(const Task& task, const Instance& instance,
                               std::span<const Hub> hubs);

struct TaskGraph {
  std::vector<Task> tasks;
  std::vector<Hub> hubs;
  Params params;

  std::vector<double> direct;        // d_t per task
  std::vector<double> service_cost;  // autonomous_service_cost per task
  std::vector<int> drive_minutes;    // travel h+_t -> h-_t per task
  std::vector<int> sink_tau;         // sigma + drive + sigma per task
  std::vector<double> sink_cost;     // service_cost - d_t per task
  std::vector<std::vector<Succ>> succs;  // retained task-to-task arcs, ascending id

  /// All arcs including source and sink arcs, in vertex numbering.
  std::vector<Arc> arcs;

  int num_tasks() const { return static_cast<int>(tasks.size()); }
  int source_vertex() const { return 0; }
  int sink_vertex() const { return num_tasks() + 1; }

  double sum_direct() const;

  /// Retained arc (t,t'); returns nullptr when pruned or absent.
  const Succ* find_succ(int from_task, int to_task) const;

  /// Relocation drive time h-_t -> h+_t'.
  int relocate_minutes(int from_task, int to_task) const;
};

/// Builds the task graph. Arcs (t,t') are omitted when
/// p_t' + Delta < (p_t - Delta) + tau_tt' (time-window infeasible).
TaskGraph build_graph(std::vector<Task> tasks, std::vector<Hub> hubs,
                      const Instance& instance);

}  // namespace athn
