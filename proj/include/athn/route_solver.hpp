#pragma once

#include <vector>

#include "athn/task_graph.hpp"

namespace athn {

/// Routes are ordered task-id sequences over disjoint task sets; start[t] is
/// the task's start time in minutes, or kUncovered for direct service.
struct RoutePlan {
  static constexpr int kUncovered = -1;

  std::vector<std::vector<int>> routes;
  std::vector<int> start;   // indexed by task id
  double objective = 0.0;   // miles
  double gap = 0.0;         // 0 when proven optimal

  int covered_count() const;
};

/// Depth-first branch-and-bound over route construction. Provably optimal if
/// it finishes within the time limit, else best incumbent with a positive gap.
/// Intended for desk-scale instances (<= ~15 tasks).
RoutePlan solve_exact(const TaskGraph& graph, int num_trucks,
                      double time_limit_sec = 3.0 * 3600.0);

/// Cheapest-insertion construction followed by relocate/swap improvement.
/// Objective is never worse than all-direct.
RoutePlan solve_heuristic(const TaskGraph& graph, int num_trucks);

/// Componentwise-minimal feasible start vector for the plan's fixed routes.
RoutePlan earliest_start(const RoutePlan& plan, const TaskGraph& graph);

/// Recomputes sum d_t + sum c_a from scratch; test oracle for plan.objective.
double objective_value(const RoutePlan& plan, const TaskGraph& graph);

/// Forward-pass feasibility check for one task sequence; fills starts when
/// out != nullptr. Returns false if some window cannot be met.
bool chain_feasible(const std::vector<int>& route, const TaskGraph& graph,
                    std::vector<int>* out_starts = nullptr);

}  // namespace athn
