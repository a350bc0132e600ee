#include "athn/task_graph.hpp"

#include <algorithm>

#include "athn/errors.hpp"

namespace athn {

double direct_cost(const Task& task, const Instance& instance) {
  const Load& load = instance.loads[static_cast<std::size_t>(task.load)];
  return 2.0 * distance(load.origin, load.destination);
}

double autonomous_service_cost(const Task& task, const Instance& instance,
                               std::span<const Hub> hubs) {
  const Load& load = instance.loads[static_cast<std::size_t>(task.load)];
  const GeoPoint& h_plus = hubs[static_cast<std::size_t>(task.origin_hub)].location;
  const GeoPoint& h_minus = hubs[static_cast<std::size_t>(task.dest_hub)].location;
  const double firstlast = distance(load.origin, h_plus) + distance(h_minus, load.destination);
  return firstlast / (1.0 - instance.params.beta) +
         instance.params.alpha * distance(h_plus, h_minus);
}

double TaskGraph::sum_direct() const {
  double sum = 0.0;
  for (double d : direct) sum += d;
  return sum;
}

const Succ* TaskGraph::find_succ(int from_task, int to_task) const {
  const auto& list = succs[static_cast<std::size_t>(from_task)];
  auto it = std::lower_bound(list.begin(), list.end(), to_task,
                             [](const Succ& s, int t) { return s.task < t; });
  return (it != list.end() && it->task == to_task) ? &*it : nullptr;
}

int TaskGraph::relocate_minutes(int from_task, int to_task) const {
  const Task& a = tasks[static_cast<std::size_t>(from_task)];
  const Task& b = tasks[static_cast<std::size_t>(to_task)];
  return travel_minutes(hubs[static_cast<std::size_t>(a.dest_hub)].location,
                        hubs[static_cast<std::size_t>(b.origin_hub)].location,
                        params.speed_mph);
}

TaskGraph build_graph(std::vector<Task> tasks, std::vector<Hub> hubs,
                      const Instance& instance) {
  TaskGraph graph;
  graph.tasks = std::move(tasks);
  graph.hubs = std::move(hubs);
  graph.params = instance.params;

  const int n = graph.num_tasks();
  const int sigma = graph.params.sigma_minutes;
  const int delta = graph.params.delta_minutes;

  graph.direct.resize(static_cast<std::size_t>(n));
  graph.service_cost.resize(static_cast<std::size_t>(n));
  graph.drive_minutes.resize(static_cast<std::size_t>(n));
  graph.sink_tau.resize(static_cast<std::size_t>(n));
  graph.sink_cost.resize(static_cast<std::size_t>(n));
  graph.succs.resize(static_cast<std::size_t>(n));

  for (int t = 0; t < n; ++t) {
    const auto ti = static_cast<std::size_t>(t);
    const Task& task = graph.tasks[ti];
    graph.direct[ti] = direct_cost(task, instance);
    graph.service_cost[ti] = autonomous_service_cost(task, instance, graph.hubs);
    graph.drive_minutes[ti] =
        travel_minutes(graph.hubs[static_cast<std::size_t>(task.origin_hub)].location,
                       graph.hubs[static_cast<std::size_t>(task.dest_hub)].location,
                       graph.params.speed_mph);
    graph.sink_tau[ti] = sigma + graph.drive_minutes[ti] + sigma;
    graph.sink_cost[ti] = graph.service_cost[ti] - graph.direct[ti];
  }

  for (int t = 0; t < n; ++t) {
    const auto ti = static_cast<std::size_t>(t);
    const Task& from = graph.tasks[ti];
    // source arc
    graph.arcs.push_back(Arc{graph.source_vertex(), t + 1, 0, 0.0});
    for (int u = 0; u < n; ++u) {
      if (u == t) continue;
      const Task& to = graph.tasks[static_cast<std::size_t>(u)];
      const int reloc = graph.relocate_minutes(t, u);
      const int tau = graph.sink_tau[ti] + reloc;
      // pruned when no start times within both windows can satisfy tau
      if (to.pickup_minute + delta < (from.pickup_minute - delta) + tau) continue;
      const double cost =
          graph.service_cost[ti] +
          graph.params.alpha *
              distance(graph.hubs[static_cast<std::size_t>(from.dest_hub)].location,
                       graph.hubs[static_cast<std::size_t>(to.origin_hub)].location) -
          graph.direct[ti];
      graph.succs[ti].push_back(Succ{u, tau, cost});
      graph.arcs.push_back(Arc{t + 1, u + 1, tau, cost});
    }
    graph.arcs.push_back(Arc{t + 1, graph.sink_vertex(), graph.sink_tau[ti],
                             graph.sink_cost[ti]});
  }
  return graph;
}

}  // namespace athn
